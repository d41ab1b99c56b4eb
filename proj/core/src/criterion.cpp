#include "btdid/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "btdid/parallel.hpp"
#include "btdid/polynomial.hpp"
#include "btdid/random.hpp"
#include "btdid/rank.hpp"

namespace btdid {
namespace {

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
    std::vector<std::size_t> c(k);
    std::iota(c.begin(), c.end(), std::size_t{0});
    return c;
}

Rational det_exact(QMatrix m) {
    const std::size_t n = m.rows();
    Rational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m(p, c)) == 0) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (sgn(m(r, c)) == 0) continue;
            const Rational f = m(r, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return det;
}

template <class S>
Matrix<S> submatrix(const Matrix<S>& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    Matrix<S> out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
    return out;
}

template <class S>
Matrix<S> combine(const std::vector<Matrix<S>>& Xs, const std::vector<S>& t) {
    Matrix<S> m(Xs.front().rows(), Xs.front().cols());
    for (std::size_t j = 0; j < Xs.size(); ++j) m = m + t[j] * Xs[j];
    return m;
}

void check_pair(std::size_t r1, std::size_t c1, std::size_t r2, std::size_t c2) {
    if (r1 != r2 || c1 != c2) throw std::invalid_argument("pencil: generators differ in shape");
    if (r1 == 0 || c1 == 0) throw std::invalid_argument("pencil: empty generators");
}

std::string str(const Rational& q) { return q.get_str(); }

PencilMember exact_member(const Rational& l, const Rational& m, const QMatrix& X1, const QMatrix& X2) {
    PencilMember p;
    p.lambda = Complex(l.get_d(), 0.0);
    p.mu = Complex(m.get_d(), 0.0);
    p.exact = std::make_pair(str(l), str(m));
    p.rank = rational_rank(l * X1 + m * X2);
    return p;
}

/// sigma_{k+1} / sigma_1 (0 for the zero matrix, 0 if k >= min side).
double relative_tail_sigma(const CMatrix& m, std::size_t k) {
    const auto sv = singular_values(m);
    if (sv.empty() || sv.front() == 0.0 || k >= sv.size()) return 0.0;
    return sv[k] / sv.front();
}

/// Alternating refinement of t towards rank(X1 + t X2) <= L.
Complex refine_pencil_root(const Eigen::MatrixXcd& X1, const Eigen::MatrixXcd& X2, Complex t, std::size_t L) {
    const auto J = X1.rows();
    for (int it = 0; it < 200; ++it) {
        Eigen::MatrixXcd M = X1 + t * X2;
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinU);
        const Eigen::MatrixXcd U = svd.matrixU().leftCols(static_cast<Eigen::Index>(L));
        const Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(J, J) - U * U.adjoint();
        const Eigen::MatrixXcd A = P * X1, B = P * X2;
        const double bb = B.squaredNorm();
        if (bb == 0.0) break;
        const Complex next = -(B.adjoint() * A).trace() / bb;
        const bool done = std::abs(next - t) <= 1e-15 * (1.0 + std::abs(t));
        t = next;
        if (done) break;
    }
    return t;
}

std::vector<Complex> projected_det_roots(const CMatrix& X1, const CMatrix& X2, std::size_t n, Rng& rng) {
    const Sampler g = Sampler::complex_gaussian();
    CMatrix P(n, X1.rows()), Q(X1.cols(), n);
    for (auto& x : P.data()) x = rng.draw_complex(g);
    for (auto& x : Q.data()) x = rng.draw_complex(g);
    const Eigen::MatrixXcd A = to_eigen(P * X1 * Q), B = to_eigen(P * X2 * Q);
    const double rho = B.norm() > 0 ? std::max(1e-12, A.norm() / B.norm()) : 1.0;
    const std::size_t m = n + 1;
    std::vector<Complex> z(m), f(m);
    for (std::size_t k = 0; k < m; ++k) {
        z[k] = std::polar(rho, 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(m));
        f[k] = (A + z[k] * B).determinant();
    }
    std::vector<Complex> c(m);
    for (std::size_t j = 0; j < m; ++j) {
        Complex acc(0);
        for (std::size_t k = 0; k < m; ++k) acc += f[k] * std::pow(z[k], -static_cast<int>(j));
        c[j] = acc / static_cast<double>(m);
    }
    // Drop leading coefficients that are noise relative to the largest.
    double scale = 0;
    for (std::size_t j = 0; j < m; ++j) scale = std::max(scale, std::abs(c[j]) * std::pow(rho, static_cast<double>(j)));
    while (!c.empty() && std::abs(c.back()) * std::pow(rho, static_cast<double>(c.size() - 1)) <= 1e-13 * scale)
        c.pop_back();
    return numeric_roots(c);
}

Complex normalize_phase(std::vector<Complex>& t) {
    double norm = 0;
    for (const auto& x : t) norm += std::norm(x);
    norm = std::sqrt(norm);
    Complex phase(1.0, 0.0);
    for (const auto& x : t)
        if (std::abs(x) > 1e-8 * norm) {
            phase = std::abs(x) / x;
            break;
        }
    for (auto& x : t) x = x * phase / norm;
    return phase;
}

}  // namespace

PencilResult pencil_low_rank_members(const QMatrix& X1, const QMatrix& X2, std::size_t L) {
    check_pair(X1.rows(), X1.cols(), X2.rows(), X2.cols());
    if (rational_rank(QMatrix::from_columns({X1.data(), X2.data()}, X1.data().size())) < 2)
        throw DegeneratePencil("degenerate pencil: generators are proportional");
    PencilResult res;
    const std::size_t J = X1.rows(), K = X1.cols(), n = L + 1;
    const Rational one(1), zero(0);
    if (n > std::min(J, K)) {
        res.vacuous = true;
        res.notes.push_back("L >= min(J, K): every member has rank <= L");
        res.members = {exact_member(one, zero, X1, X2), exact_member(zero, one, X1, X2)};
        return res;
    }

    std::vector<Rational> nodes;
    std::vector<QMatrix> evals;
    for (std::size_t i = 0; i <= n; ++i) {
        nodes.emplace_back(static_cast<long>(i));
        evals.push_back(X1 + nodes.back() * X2);
    }
    QPoly g;
    auto rows = first_combination(n);
    bool constant = false;
    do {
        auto cols = first_combination(n);
        do {
            std::vector<Rational> ys;
            for (const auto& e : evals) ys.push_back(det_exact(submatrix(e, rows, cols)));
            g = gcd(g, QPoly::interpolate(nodes, ys));
            constant = g.degree() == 0;
        } while (!constant && next_combination(cols, K));
    } while (!constant && next_combination(rows, J));

    if (g.is_zero()) {
        res.vacuous = true;
        res.notes.push_back("all (L+1)-minors vanish identically: every member has rank <= L");
        res.members = {exact_member(one, zero, X1, X2), exact_member(zero, one, X1, X2)};
        return res;
    }
    if (g.degree() > 0) {
        const RootSplit roots = split_roots(g);
        for (const auto& [t, mult] : roots.rational) res.members.push_back(exact_member(one, t, X1, X2));
        const CMatrix C1 = to_complex(X1), C2 = to_complex(X2);
        for (const Complex& t : roots.other) {
            PencilMember p;
            p.mu = t;
            p.rank = numerical_rank(C1 + t * C2, 1e-6);
            res.members.push_back(p);
        }
        if (!roots.other.empty())
            res.notes.push_back(std::to_string(roots.other.size()) + " irrational root(s) reported numerically");
    }
    if (rational_rank(X2) <= L) res.members.push_back(exact_member(zero, one, X1, X2));
    return res;
}

PencilResult pencil_low_rank_members(const CMatrix& X1, const CMatrix& X2, std::size_t L, std::uint64_t seed,
                                     double tol) {
    check_pair(X1.rows(), X1.cols(), X2.rows(), X2.cols());
    if (numerical_rank(CMatrix::from_columns({X1.data(), X2.data()}, X1.data().size())) < 2)
        throw DegeneratePencil("degenerate pencil: generators are proportional");
    PencilResult res;
    const std::size_t n = L + 1;
    auto member = [&](Complex l, Complex m) {
        PencilMember p;
        p.lambda = l;
        p.mu = m;
        p.rank = numerical_rank(l * X1 + m * X2, tol);
        return p;
    };
    if (n > std::min(X1.rows(), X1.cols())) {
        res.vacuous = true;
        res.notes.push_back("L >= min(J, K): every member has rank <= L");
        res.members = {member(1.0, 0.0), member(0.0, 1.0)};
        return res;
    }
    // Every minor of size L+1 vanishing along the pencil makes the pencil vacuous.
    Rng rng(derive_seed(seed, {0x9e7c}));
    bool all_low = true;
    for (int probe = 0; probe < 3 && all_low; ++probe) {
        const Complex t = rng.draw_complex(Sampler::complex_gaussian());
        all_low = relative_tail_sigma(X1 + t * X2, L) <= tol;
    }
    if (all_low) {
        res.vacuous = true;
        res.notes.push_back("rank <= L at random members: every member has rank <= L");
        res.members = {member(1.0, 0.0), member(0.0, 1.0)};
        return res;
    }

    const Eigen::MatrixXcd E1 = to_eigen(X1), E2 = to_eigen(X2);
    std::vector<Complex> found;
    for (int proj = 0; proj < 2; ++proj) {
        for (Complex t : projected_det_roots(X1, X2, n, rng)) {
            if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) continue;
            t = refine_pencil_root(E1, E2, t, L);
            if (relative_tail_sigma(X1 + t * X2, L) > tol) continue;
            const bool dup = std::any_of(found.begin(), found.end(),
                                         [&](const Complex& u) { return std::abs(u - t) <= 1e-6 * (1.0 + std::abs(t)); });
            if (!dup) found.push_back(t);
        }
    }
    std::sort(found.begin(), found.end(), [](const Complex& a, const Complex& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    for (const Complex& t : found) {
        // Snap numerically zero parts so that [1:0] prints as such.
        const Complex s(std::abs(t.real()) < 1e-12 ? 0.0 : t.real(), std::abs(t.imag()) < 1e-12 ? 0.0 : t.imag());
        res.members.push_back(member(1.0, s));
    }
    if (relative_tail_sigma(X2, L) <= tol) res.members.push_back(member(0.0, 1.0));
    return res;
}

SpanSearchResult span_low_rank_search(const std::vector<CMatrix>& Xs, std::size_t L, const SpanSearchOptions& opts) {
    if (Xs.size() < 2) throw std::invalid_argument("span_low_rank_search: need at least two matrices");
    for (const auto& X : Xs) check_pair(X.rows(), X.cols(), Xs.front().rows(), Xs.front().cols());
    SpanSearchResult res;
    const std::size_t J = Xs.front().rows(), K = Xs.front().cols(), s = Xs.size();
    if (L >= std::min(J, K)) {
        res.vacuous = true;
        return res;
    }
    std::vector<double> norms;
    std::vector<Eigen::MatrixXcd> Y;
    for (const auto& X : Xs) {
        norms.push_back(frobenius_norm(X));
        if (norms.back() == 0.0) throw std::invalid_argument("span_low_rank_search: zero generator");
        Y.push_back(to_eigen(X) / norms.back());
    }
    auto combo = [&](const Eigen::VectorXcd& t) {
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(J), static_cast<Eigen::Index>(K));
        for (std::size_t j = 0; j < s; ++j) M += t(static_cast<Eigen::Index>(j)) * Y[j];
        return M;
    };
    auto tail = [&](const Eigen::MatrixXcd& M) {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
        return svd.singularValues()(static_cast<Eigen::Index>(L));
    };

    auto record = [&](Eigen::VectorXcd t) {
        const double sigma = tail(combo(t));
        if (sigma >= opts.tol) return;
        std::vector<Complex> c(s);
        for (std::size_t j = 0; j < s; ++j) c[j] = t(static_cast<Eigen::Index>(j)) / norms[j];
        normalize_phase(c);
        std::vector<Complex> u(t.data(), t.data() + s);
        normalize_phase(u);
        SpanCandidate cand;
        cand.sigma = sigma;
        // Generators and t are unit norm, so singular values are compared absolutely.
        const auto sv = singular_values(from_eigen(combo(t)));
        cand.rank = static_cast<std::size_t>(std::count_if(sv.begin(), sv.end(), [&](double x) { return x >= opts.tol; }));
        for (std::size_t j = 0; j < s; ++j)
            if (std::abs(u[j]) >= 1.0 - 1e-6) cand.generator = j;
        auto& bucket = cand.generator ? res.generators : res.candidates;
        const bool dup = std::any_of(bucket.begin(), bucket.end(), [&](const SpanCandidate& o) {
            Complex ip(0);
            for (std::size_t j = 0; j < s; ++j) ip += std::conj(o.coeffs[j]) * c[j];
            return std::abs(ip) >= 1.0 - 1e-6;
        });
        cand.coeffs = std::move(c);
        if (!dup) bucket.push_back(std::move(cand));
    };

    // Linear dependencies give the zero matrix, which has every rank.
    {
        Eigen::MatrixXcd stack(static_cast<Eigen::Index>(J * K), static_cast<Eigen::Index>(s));
        for (std::size_t j = 0; j < s; ++j)
            stack.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXcd>(Y[j].data(), Y[j].size());
        const CMatrix ker = nullspace(from_eigen(stack));
        for (std::size_t c = 0; c < ker.cols(); ++c) record(to_eigen(ker.columns(c, 1)).col(0));
    }

    std::vector<Eigen::VectorXcd> finals(opts.multistarts);
    parallel_for(opts.multistarts, [&](std::size_t m) {
        Rng rng(derive_seed(opts.seed, {0x5ea7, m}));
        Eigen::VectorXcd t(static_cast<Eigen::Index>(s));
        for (auto& x : t) x = rng.draw_complex(Sampler::complex_gaussian());
        t.normalize();
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t it = 0; it < opts.max_iters; ++it) {
            Eigen::BDCSVD<Eigen::MatrixXcd> svd(combo(t), Eigen::ComputeThinU);
            const Eigen::MatrixXcd U = svd.matrixU().leftCols(static_cast<Eigen::Index>(L));
            std::vector<Eigen::MatrixXcd> PY;
            for (const auto& y : Y) PY.push_back(y - U * (U.adjoint() * y));
            Eigen::MatrixXcd G(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s));
            for (std::size_t i = 0; i < s; ++i)
                for (std::size_t j = 0; j < s; ++j)
                    G(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (PY[i].adjoint() * PY[j]).trace();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
            t = es.eigenvectors().col(0);
            const double obj = std::sqrt(std::max(0.0, es.eigenvalues()(0)));
            if (obj < opts.tol * 1e-3 || prev - obj <= 1e-15) break;
            prev = obj;
        }
        finals[m] = t;
    });
    for (const auto& t : finals) record(t);
    return res;
}

namespace {

template <class S>
bool independent_vectors(const std::vector<std::vector<S>>& vs) {
    return rank_of(Matrix<S>::from_columns(vs, vs.front().size())) == vs.size();
}

/// Tries to express a numerical span member exactly: scale the largest
/// coefficient to 1, round the rest to nearby rationals and recheck the rank.
std::optional<std::vector<Rational>> rationalize_member(const std::vector<Complex>& c, const std::vector<QMatrix>& Xs,
                                                        std::size_t L) {
    std::size_t big = 0;
    for (std::size_t j = 1; j < c.size(); ++j)
        if (std::abs(c[j]) > std::abs(c[big])) big = j;
    std::vector<Rational> q;
    for (const auto& x : c) {
        const Complex y = x / c[big];
        if (std::abs(y.imag()) > 1e-7) return std::nullopt;
        q.push_back(best_rational(y.real(), mpz_class(1000000)));
    }
    if (rational_rank(combine(Xs, q)) > L) return std::nullopt;
    return q;
}

template <class S>
struct SubsetWork {
    SubsetOutcome outcome;
    std::optional<ViolatingMember> member;
};

template <class S>
SubsetWork<S> check_subset(const std::vector<Matrix<S>>& X, const std::vector<std::size_t>& subset, std::size_t L,
                           const CriterionOptions& opts, std::uint64_t subset_seed) {
    SubsetWork<S> w;
    w.outcome.subset = subset;
    w.outcome.L = L;
    std::vector<Matrix<S>> gens;
    for (auto j : subset) gens.push_back(X[j]);

    if (subset.size() == 2) {
        w.outcome.method = arithmetic_of<S>() == Arithmetic::Rational ? "exact-pencil" : "float-pencil";
        PencilResult pr;
        if constexpr (std::is_same_v<S, Rational>)
            pr = pencil_low_rank_members(gens[0], gens[1], L);
        else
            pr = pencil_low_rank_members(gens[0], gens[1], L, subset_seed);
        w.outcome.vacuous = pr.vacuous;
        if (pr.vacuous) {
            ViolatingMember v;
            v.coeffs = {1.0, 1.0};
            if constexpr (std::is_same_v<S, Rational>) v.exact = std::vector<std::string>{"1", "1"};
            v.rank = rank_of(gens[0] + gens[1]);
            v.exactly_verified = arithmetic_of<S>() == Arithmetic::Rational;
            w.outcome.violation = true;
            w.member = v;
            return w;
        }
        for (const auto& m : pr.members) {
            const bool is_x1 = std::abs(m.mu) == 0.0, is_x2 = std::abs(m.lambda) == 0.0;
            if (is_x1 || is_x2) continue;
            ViolatingMember v;
            v.coeffs = {m.lambda, m.mu};
            if (m.exact) v.exact = std::vector<std::string>{m.exact->first, m.exact->second};
            v.rank = m.rank;
            v.exactly_verified = m.exact.has_value();
            w.outcome.violation = true;
            w.member = v;
            return w;
        }
        return w;
    }

    w.outcome.method = "span-search";
    std::vector<CMatrix> cg;
    for (const auto& g : gens) {
        if constexpr (std::is_same_v<S, Rational>)
            cg.push_back(to_complex(g));
        else
            cg.push_back(g);
    }
    SpanSearchOptions so = opts.span;
    so.seed = subset_seed;
    const SpanSearchResult sr = span_low_rank_search(cg, L, so);
    w.outcome.vacuous = sr.vacuous;
    if (sr.vacuous) {
        ViolatingMember v;
        v.coeffs.assign(gens.size(), Complex(1.0, 0.0));
        std::vector<S> ones(gens.size(), S(1));
        if constexpr (std::is_same_v<S, Rational>) v.exact = std::vector<std::string>(gens.size(), "1");
        v.rank = rank_of(combine(gens, ones));
        v.exactly_verified = arithmetic_of<S>() == Arithmetic::Rational;
        w.outcome.violation = true;
        w.member = v;
        return w;
    }
    if (sr.candidates.empty()) return w;
    const SpanCandidate& c = sr.candidates.front();
    ViolatingMember v;
    v.coeffs = c.coeffs;
    v.rank = c.rank;
    if constexpr (std::is_same_v<S, Rational>) {
        if (auto q = rationalize_member(c.coeffs, gens, L)) {
            std::vector<std::string> e;
            for (const auto& x : *q) e.push_back(x.get_str());
            v.exact = std::move(e);
            v.rank = rational_rank(combine(gens, *q));
            v.exactly_verified = true;
        }
    }
    w.outcome.violation = true;
    w.member = v;
    return w;
}

}  // namespace

template <class S>
CriterionReport delathauwer_check(const GroundTruth<S>& gt, const CriterionOptions& opts) {
    const std::size_t R = gt.spec.R();
    if (gt.spec.I < R)
        throw HypothesisViolation("criterion requires I >= R (I = " + std::to_string(gt.spec.I) +
                                  ", R = " + std::to_string(R) + ")");
    std::vector<std::vector<S>> as;
    for (const auto& b : gt.blocks) as.push_back(b.a);
    if (!independent_vectors(as)) throw HypothesisViolation("criterion requires linearly independent a_r");

    CriterionReport rep;
    rep.confidence = arithmetic_of<S>() == Arithmetic::Rational ? "exact" : "numerical";
    rep.notes.push_back("single blocks (s = 1) are not searched");
    if (R == 1) {
        rep.notes.push_back("one block: no span with two or more generators");
        return rep;
    }
    const std::vector<Matrix<S>> X = gt.matrices();
    const std::size_t smax = opts.max_subset ? std::min(opts.max_subset, R) : R;
    std::vector<std::vector<std::size_t>> subsets;
    for (std::size_t s = 2; s <= smax; ++s) {
        auto c = first_combination(s);
        do subsets.push_back(c);
        while (next_combination(c, R));
    }
    if (smax < R) rep.notes.push_back("subsets larger than " + std::to_string(smax) + " skipped");

    std::vector<SubsetWork<S>> work(subsets.size());
    parallel_for(subsets.size(), [&](std::size_t i) {
        std::size_t L = 0;
        for (auto j : subsets[i]) L = std::max(L, gt.spec.L[j]);
        work[i] = check_subset(X, subsets[i], L, opts, derive_seed(opts.span.seed, {0xc41, i}));
    });

    bool searched = false;
    for (auto& w : work) {
        searched = searched || w.outcome.method == "span-search";
        rep.subsets.push_back(w.outcome);
        if (rep.holds && w.outcome.violation) {
            rep.holds = false;
            rep.violating_subset = w.outcome.subset;
            rep.violating_member = w.member;
        }
    }
    if (rep.holds) {
        if (searched) rep.confidence = "probabilistic";
    } else {
        rep.confidence = rep.violating_member->exactly_verified ? "exact" : "numerical";
    }
    return rep;
}

template CriterionReport delathauwer_check(const GroundTruth<Complex>&, const CriterionOptions&);
template CriterionReport delathauwer_check(const GroundTruth<Rational>&, const CriterionOptions&);

}  // namespace btdid
