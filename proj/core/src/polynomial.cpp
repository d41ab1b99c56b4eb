#include "btdid/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace btdid {
namespace {

void trim(std::vector<Rational>& c) {
    while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

}  // namespace

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    for (auto& x : c_) x.canonicalize();
    trim(c_);
}

QPoly QPoly::interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
    // Newton divided differences, then expand the Newton form.
    const std::size_t n = xs.size();
    std::vector<Rational> d = ys;
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = n - 1; i >= k; --i) {
            const Rational den = xs[i] - xs[i - k];
            if (sgn(den) == 0) throw std::invalid_argument("interpolate: repeated node");
            d[i] = (d[i] - d[i - 1]) / den;
        }
    std::vector<Rational> c(n, Rational(0));
    for (std::size_t k = n; k-- > 0;) {
        // c <- c * (x - xs[k]) + d[k]
        std::vector<Rational> next(n, Rational(0));
        for (std::size_t i = 0; i + 1 < n; ++i) {
            next[i + 1] += c[i];
            next[i] -= c[i] * xs[k];
        }
        next[0] += d[k];
        c = std::move(next);
    }
    return QPoly(std::move(c));
}

Rational QPoly::operator()(const Rational& x) const {
    Rational acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Complex QPoly::operator()(const Complex& x) const {
    Complex acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].get_d();
    return acc;
}

QPoly QPoly::monic() const {
    if (is_zero()) return *this;
    std::vector<Rational> c = c_;
    const Rational lead = c.back();
    for (auto& x : c) x /= lead;
    return QPoly(std::move(c));
}

QPoly QPoly::derivative() const {
    std::vector<Rational> c;
    for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(c_[i] * static_cast<long>(i));
    return QPoly(std::move(c));
}

QPoly QPoly::primitive() const {
    if (is_zero()) return *this;
    mpz_class den = 1, num = 0;
    for (const auto& x : c_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Rational> c;
    for (const auto& x : c_) {
        Rational y = x * den;
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), y.get_num_mpz_t());
        c.push_back(y);
    }
    if (sgn(c.back()) < 0) num = -num;
    for (auto& x : c) x /= num;
    return QPoly(std::move(c));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.coeffs().size() + b.coeffs().size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
    return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
    std::vector<Rational> c(std::max(a.coeffs().size(), b.coeffs().size()), Rational(0));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) c[i] += a.coeffs()[i];
    for (std::size_t i = 0; i < b.coeffs().size(); ++i) c[i] -= b.coeffs()[i];
    return QPoly(std::move(c));
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> r = a.coeffs();
    const int db = b.degree();
    std::vector<Rational> q(std::max(0, a.degree() - db + 1), Rational(0));
    for (int k = a.degree() - db; k >= 0; --k) {
        const Rational f = r[k + db] / b.leading();
        q[k] = f;
        for (int i = 0; i <= db; ++i) r[k + i] -= f * b.coeffs()[i];
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a, y = b;
    while (!y.is_zero()) {
        QPoly r = divmod(x, y).second;
        // Primitive parts keep coefficient growth in check.
        x = std::move(y);
        y = r.primitive();
    }
    return x.monic();
}

std::vector<Complex> numeric_roots(const std::vector<Complex>& coeffs) {
    std::size_t n = coeffs.size();
    while (n > 0 && coeffs[n - 1] == Complex(0)) --n;
    if (n <= 1) return {};
    const std::size_t d = n - 1;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (std::size_t i = 0; i < d; ++i) comp(i, d - 1) = -coeffs[i] / coeffs[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<Complex> roots(es.eigenvalues().data(), es.eigenvalues().data() + d);
    return roots;
}

Rational best_rational(double x, const mpz_class& max_den) {
    if (!std::isfinite(x)) throw std::domain_error("best_rational: non-finite input");
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double r = x;
    Rational best(static_cast<long>(std::llround(x)));
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(r);
        mpz_class ai;
        mpz_set_d(ai.get_mpz_t(), a);
        const mpz_class p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        best = Rational(p2, q2);
        best.canonicalize();
        p0 = p1, q0 = q1, p1 = p2, q1 = q2;
        const double frac = r - a;
        if (frac < 1e-15) break;
        r = 1.0 / frac;
    }
    return best;
}

RootSplit split_roots(const QPoly& p) {
    if (p.is_zero()) throw std::domain_error("split_roots: zero polynomial");
    RootSplit out;
    QPoly rest = p.primitive();
    // Root denominators divide the leading coefficient of the primitive form.
    const mpz_class max_den = abs(rest.leading().get_num());
    bool progress = true;
    while (rest.degree() > 0 && progress) {
        progress = false;
        const QPoly sqfree = divmod(rest, gcd(rest, rest.derivative())).first;
        std::vector<Complex> cc;
        for (const auto& c : sqfree.coeffs()) cc.emplace_back(c.get_d(), 0.0);
        for (const Complex& z : numeric_roots(cc)) {
            if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z))) continue;
            const Rational q = best_rational(z.real(), max_den);
            if (sgn(rest(q)) != 0) continue;
            std::size_t mult = 0;
            const QPoly lin({-q, Rational(1)});
            while (rest.degree() > 0) {
                auto [quo, rem] = divmod(rest, lin);
                if (!rem.is_zero()) break;
                rest = quo;
                ++mult;
            }
            out.rational.emplace_back(q, mult);
            progress = true;
            break;  // recompute numeric roots on the deflated polynomial
        }
    }
    std::sort(out.rational.begin(), out.rational.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (rest.degree() > 0) {
        const QPoly sqfree = divmod(rest, gcd(rest, rest.derivative())).first;
        std::vector<Complex> cc;
        for (const auto& c : sqfree.coeffs()) cc.emplace_back(c.get_d(), 0.0);
        out.other = numeric_roots(cc);
        std::sort(out.other.begin(), out.other.end(), [](const Complex& a, const Complex& b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
    }
    return out;
}

}  // namespace btdid
