#include "btdid/rank.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace btdid {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 reduce(const mpz_class& z, u64 p) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);  // p < 2^63 fits unsigned long on LP64
    return r.get_ui();
}

struct ModMatrix {
    std::size_t rows, cols;
    std::vector<u64> a;
    u64& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
};

ModMatrix reduce_matrix(const QMatrix& m, u64 p) {
    ModMatrix out{m.rows(), m.cols(), std::vector<u64>(m.rows() * m.cols())};
    for (std::size_t i = 0; i < m.data().size(); ++i) {
        const Rational& q = m.data()[i];
        if (sgn(q) == 0) continue;
        const u64 den = reduce(q.get_den(), p);
        if (den == 0) throw std::domain_error("modular_rank: prime divides a denominator");
        out.a[i] = mulmod(reduce(q.get_num(), p), powmod(den, p - 2, p), p);
    }
    return out;
}

/// Gaussian elimination mod p; returns pivot columns in increasing order.
std::vector<std::size_t> modular_pivots(const QMatrix& m, u64 p) {
    ModMatrix a = reduce_matrix(m, p);
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols && row < a.rows; ++col) {
        std::size_t piv = row;
        while (piv < a.rows && a.at(piv, col) == 0) ++piv;
        if (piv == a.rows) continue;
        if (piv != row)
            for (std::size_t c = col; c < a.cols; ++c) std::swap(a.at(piv, c), a.at(row, c));
        const u64 inv = powmod(a.at(row, col), p - 2, p);
        for (std::size_t r = row + 1; r < a.rows; ++r) {
            const u64 f = mulmod(a.at(r, col), inv, p);
            if (f == 0) continue;
            const u64 nf = p - f;
            for (std::size_t c = col; c < a.cols; ++c) {
                const u64 v = a.at(row, c);
                if (v) a.at(r, c) = static_cast<u64>((a.at(r, c) + static_cast<u128>(nf) * v % p) % p);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

/// Row-scaled integer copy of m.
std::vector<std::vector<mpz_class>> integer_rows(const QMatrix& m) {
    std::vector<std::vector<mpz_class>> rows(m.rows(), std::vector<mpz_class>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        mpz_class l = 1;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const mpz_class& d = m(r, c).get_den();
            if (d != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        }
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Rational& q = m(r, c);
            rows[r][c] = q.get_num() * (l / q.get_den());
        }
    }
    return rows;
}

/// Bareiss elimination; returns pivot columns in increasing order.
std::vector<std::size_t> bareiss_pivots(const QMatrix& m) {
    auto a = integer_rows(m);
    const std::size_t nr = m.rows(), nc = m.cols();
    std::vector<std::size_t> pivots;
    mpz_class prev = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < nc && row < nr; ++col) {
        std::size_t piv = row;
        while (piv < nr && a[piv][col] == 0) ++piv;
        if (piv == nr) continue;
        std::swap(a[piv], a[row]);
        const mpz_class& p = a[row][col];
        for (std::size_t r = row + 1; r < nr; ++r) {
            for (std::size_t c = col + 1; c < nc; ++c) {
                a[r][c] = a[r][c] * p - a[r][col] * a[row][c];
                mpz_divexact(a[r][c].get_mpz_t(), a[r][c].get_mpz_t(), prev.get_mpz_t());
            }
            a[r][col] = 0;
        }
        prev = p;
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

bool use_exact_elimination(const QMatrix& m) {
    return std::min(m.rows(), m.cols()) <= kExactEliminationMaxSide;
}

}  // namespace

std::vector<double> singular_values(const CMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return {};
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(to_eigen(m));
    const auto& sv = svd.singularValues();
    return std::vector<double>(sv.data(), sv.data() + sv.size());
}

std::size_t numerical_rank(const CMatrix& m, double tol) {
    const auto sv = singular_values(m);
    if (sv.empty() || sv.front() == 0.0) return 0;
    const double cut = tol * sv.front();
    return static_cast<std::size_t>(std::count_if(sv.begin(), sv.end(), [cut](double s) { return s > cut; }));
}

std::size_t bareiss_rank(const QMatrix& m) { return bareiss_pivots(m).size(); }

std::size_t modular_rank(const QMatrix& m, std::uint64_t prime) { return modular_pivots(m, prime).size(); }

std::size_t rational_rank(const QMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    if (use_exact_elimination(m)) return bareiss_rank(m);
    std::size_t best = 0;
    for (u64 p : kRankPrimes) best = std::max(best, modular_rank(m, p));
    return best;
}

std::vector<std::size_t> independent_columns(const QMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return {};
    if (use_exact_elimination(m)) return bareiss_pivots(m);
    std::vector<std::size_t> best;
    for (u64 p : kRankPrimes) {
        auto piv = modular_pivots(m, p);
        if (piv.size() > best.size()) best = std::move(piv);
    }
    return best;
}

std::vector<std::size_t> independent_columns(const CMatrix& m, double tol) {
    if (m.rows() == 0 || m.cols() == 0) return {};
    const Eigen::MatrixXcd e = to_eigen(m);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(e);
    const std::size_t r = numerical_rank(m, tol);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < r; ++i)
        idx.push_back(static_cast<std::size_t>(qr.colsPermutation().indices()(static_cast<Eigen::Index>(i))));
    std::sort(idx.begin(), idx.end());
    return idx;
}

QMatrix nullspace(const QMatrix& m) {
    // Gauss-Jordan to reduced row echelon form over Q.
    QMatrix a = m;
    const std::size_t nr = a.rows(), nc = a.cols();
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t col = 0; col < nc && row < nr; ++col) {
        std::size_t piv = row;
        while (piv < nr && sgn(a(piv, col)) == 0) ++piv;
        if (piv == nr) continue;
        if (piv != row)
            for (std::size_t c = 0; c < nc; ++c) std::swap(a(piv, c), a(row, c));
        const Rational inv = 1 / a(row, col);
        for (std::size_t c = col; c < nc; ++c) a(row, c) *= inv;
        for (std::size_t r = 0; r < nr; ++r) {
            if (r == row || sgn(a(r, col)) == 0) continue;
            const Rational f = a(r, col);
            for (std::size_t c = col; c < nc; ++c)
                if (sgn(a(row, c)) != 0) a(r, c) -= f * a(row, c);
        }
        pivot_cols.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(nc, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < nc; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(nc, Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a(i, free);
        basis.push_back(std::move(v));
    }
    return QMatrix::from_columns(basis, nc);
}

CMatrix nullspace(const CMatrix& m, double tol) {
    const std::size_t n = m.cols();
    if (m.rows() == 0) return CMatrix::identity(n);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(to_eigen(m), Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    std::size_t r = 0;
    if (sv.size() > 0 && sv(0) > 0.0)
        while (r < static_cast<std::size_t>(sv.size()) && sv(static_cast<Eigen::Index>(r)) > tol * sv(0)) ++r;
    const Eigen::MatrixXcd v = svd.matrixV();
    return from_eigen(v.rightCols(static_cast<Eigen::Index>(n - r)));
}

}  // namespace btdid
