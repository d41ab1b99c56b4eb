#include "btdid/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace btdid {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::string to_string(const Sampler& s) {
    if (s.kind == Sampler::Kind::ComplexGaussian) return "complex-gaussian";
    return "integer-uniform(" + std::to_string(s.bound) + ")";
}

Sampler sampler_from_string(const std::string& s) {
    if (s == "complex-gaussian" || s == "gaussian") return Sampler::complex_gaussian();
    if (s == "integer" || s == "integer-uniform") return Sampler::integer_uniform();
    const std::string prefix = "integer-uniform(";
    if (s.rfind(prefix, 0) == 0 && s.back() == ')') {
        const int b = std::stoi(s.substr(prefix.size(), s.size() - prefix.size() - 1));
        if (b < 1) throw std::invalid_argument("integer sampler bound must be >= 1");
        return Sampler::integer_uniform(b);
    }
    throw std::invalid_argument("unknown sampler '" + s + "'");
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = splitmix64(seed);
    for (auto p : path) h = splitmix64(h ^ splitmix64(p + 0x632be59bd9b4e019ULL));
    return h;
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
}

long Rng::uniform_int(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return lo + static_cast<long>(x % span);
}

Complex Rng::draw_complex(const Sampler& s) {
    if (s.kind == Sampler::Kind::IntegerUniform) return {static_cast<double>(uniform_int(-s.bound, s.bound)), 0.0};
    const double re = gaussian();
    const double im = gaussian();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

Rational Rng::draw_rational(const Sampler& s) {
    if (s.kind != Sampler::Kind::IntegerUniform)
        throw std::invalid_argument("rational arithmetic requires the integer-uniform sampler");
    return Rational(uniform_int(-s.bound, s.bound));
}

}  // namespace btdid
