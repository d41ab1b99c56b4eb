#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "btdid/linalg.hpp"

namespace btdid {

/// Univariate polynomial over Q, coefficients from the constant term up.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> coeffs);

    /// Unique polynomial of degree < xs.size() through (xs[i], ys[i]); xs distinct.
    static QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& leading() const { return c_.back(); }

    Rational operator()(const Rational& x) const;
    Complex operator()(const Complex& x) const;

    QPoly monic() const;
    QPoly derivative() const;
    /// Integer coefficients with content 1 and positive leading coefficient.
    QPoly primitive() const;

    bool operator==(const QPoly&) const = default;

private:
    std::vector<Rational> c_;
};

QPoly operator*(const QPoly& a, const QPoly& b);
QPoly operator-(const QPoly& a, const QPoly& b);

/// Quotient and remainder; throws std::domain_error on division by zero.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);

/// Monic gcd; gcd(0, 0) = 0.
QPoly gcd(const QPoly& a, const QPoly& b);

/// Roots of sum_i coeffs[i] x^i from the eigenvalues of the companion matrix.
std::vector<Complex> numeric_roots(const std::vector<Complex>& coeffs);

struct RootSplit {
    /// Exact rational roots with multiplicities, ascending.
    std::vector<std::pair<Rational, std::size_t>> rational;
    /// Approximations of the remaining roots (each listed once).
    std::vector<Complex> other;
};

/// Rational roots are found from numeric approximations by continued-fraction
/// rounding and confirmed by exact evaluation; whatever is left is reported
/// numerically. Throws std::domain_error for the zero polynomial.
RootSplit split_roots(const QPoly& p);

/// Continued-fraction convergent of x with denominator <= max_den closest to x.
Rational best_rational(double x, const mpz_class& max_den);

}  // namespace btdid
