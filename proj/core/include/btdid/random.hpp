#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>

#include "btdid/linalg.hpp"

namespace btdid {

/// How random entries are drawn. Integer sampling keeps exact arithmetic cheap.
struct Sampler {
    enum class Kind { ComplexGaussian, IntegerUniform };
    Kind kind = Kind::ComplexGaussian;
    int bound = 9;  ///< integer entries are uniform on [-bound, bound]

    static Sampler complex_gaussian() { return {Kind::ComplexGaussian, 9}; }
    static Sampler integer_uniform(int bound = 9) { return {Kind::IntegerUniform, bound}; }

    bool operator==(const Sampler&) const = default;
};

std::string to_string(const Sampler& s);
Sampler sampler_from_string(const std::string& s);

/// Mixes a base seed with a path of indices (trial, start, subset, ...).
/// Results depend only on the inputs, never on execution order.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

/// Portable random source: mt19937_64 output is standardized, and all
/// distributions below are implemented here rather than taken from <random>.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    double uniform01();
    double gaussian();
    long uniform_int(long lo, long hi);

    Complex draw_complex(const Sampler& s);
    Rational draw_rational(const Sampler& s);

    template <class S>
    S draw(const Sampler& s);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

template <>
inline Complex Rng::draw<Complex>(const Sampler& s) { return draw_complex(s); }
template <>
inline Rational Rng::draw<Rational>(const Sampler& s) { return draw_rational(s); }

}  // namespace btdid
