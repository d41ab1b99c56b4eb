#include "btdid/variety.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace btdid {

SubspaceVarietySpec::SubspaceVarietySpec(Shape ambient, std::vector<std::size_t> mode_ranks)
    : ambient_(std::move(ambient)), ranks_(std::move(mode_ranks)) {
    if (ranks_.size() != ambient_.order())
        throw std::invalid_argument("SubspaceVarietySpec: need one mode rank per ambient mode");
    for (std::size_t i = 0; i < ranks_.size(); ++i)
        if (ranks_[i] < 1 || ranks_[i] > ambient_[i])
            throw std::invalid_argument("SubspaceVarietySpec: mode rank k_" + std::to_string(i + 1) + " = " +
                                        std::to_string(ranks_[i]) + " outside [1, " + std::to_string(ambient_[i]) + "]");
}

bool SubspaceVarietySpec::unbalanced() const {
    const std::size_t prod = core_size();
    for (auto k : ranks_)
        if (k > prod / k) return true;
    return false;
}

std::size_t SubspaceVarietySpec::core_size() const {
    return std::accumulate(ranks_.begin(), ranks_.end(), std::size_t{1}, std::multiplies<>());
}

std::string SubspaceVarietySpec::to_string() const {
    std::string s = "Sub_{";
    for (std::size_t i = 0; i < ranks_.size(); ++i) s += (i ? "," : "") + std::to_string(ranks_[i]);
    s += "} in ";
    for (std::size_t i = 0; i < ambient_.order(); ++i) s += (i ? "x" : "") + std::to_string(ambient_[i]);
    return s;
}

std::size_t affine_cone_dimension(const SubspaceVarietySpec& spec) {
    if (spec.unbalanced()) throw std::domain_error("unbalanced ranks: " + spec.to_string());
    std::size_t d = spec.core_size();
    for (std::size_t i = 0; i < spec.order(); ++i) d += spec.mode_ranks()[i] * (spec.ambient()[i] - spec.mode_ranks()[i]);
    return d;
}

namespace {

template <class S>
Tensor<S> lift(const Tensor<S>& core, const std::vector<Matrix<S>>& frames) {
    Tensor<S> t = core;
    for (std::size_t i = 0; i < frames.size(); ++i) t = mode_multiply(t, frames[i], i);
    return t;
}

template <class S>
Matrix<S> random_matrix(Rng& rng, std::size_t rows, std::size_t cols, const Sampler& sampler) {
    Matrix<S> m(rows, cols);
    for (auto& x : m.data()) x = rng.draw<S>(sampler);
    return m;
}

template <class S>
bool is_negligible(const S& x, double scale, double tol) {
    if constexpr (std::is_same_v<S, Rational>) {
        (void)scale;
        (void)tol;
        return sgn(x) == 0;
    } else {
        return std::abs(x) <= tol * scale;
    }
}

template <class S>
double magnitude(const std::vector<S>& v) {
    double s = 0.0;
    for (const auto& x : v) {
        if constexpr (std::is_same_v<S, Rational>)
            s += x.get_d() * x.get_d();
        else
            s += std::norm(x);
    }
    return std::sqrt(s);
}

}  // namespace

template <class S>
VarietyPoint<S> make_point(const SubspaceVarietySpec& spec, std::vector<Matrix<S>> frames, Tensor<S> core) {
    if (frames.size() != spec.order()) throw std::invalid_argument("make_point: need one frame per mode");
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (frames[i].rows() != spec.ambient()[i] || frames[i].cols() != spec.mode_ranks()[i])
            throw std::invalid_argument("make_point: frame " + std::to_string(i) + " has wrong shape");
        if (rank_of(frames[i]) != spec.mode_ranks()[i])
            throw std::invalid_argument("make_point: frame " + std::to_string(i) + " is not of full column rank");
    }
    if (!(core.shape() == Shape(spec.mode_ranks()))) throw std::invalid_argument("make_point: core shape mismatch");
    VarietyPoint<S> p;
    p.spec = spec;
    p.tensor = lift(core, frames);
    p.frames = std::move(frames);
    p.core = std::move(core);
    const ModeRanks mr = multilinear_rank(p.core);
    for (std::size_t i = 0; i < mr.size(); ++i)
        if (mr[i] < spec.mode_ranks()[i]) p.boundary = true;
    return p;
}

template <class S>
VarietyPoint<S> sample_point(const SubspaceVarietySpec& spec, const Sampler& sampler, std::uint64_t seed) {
    if (spec.unbalanced()) throw std::domain_error("unbalanced ranks: " + spec.to_string());
    Rng rng(derive_seed(seed, {0x9017}));
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<Matrix<S>> frames;
        bool ok = true;
        for (std::size_t i = 0; i < spec.order() && ok; ++i) {
            frames.push_back(random_matrix<S>(rng, spec.ambient()[i], spec.mode_ranks()[i], sampler));
            ok = rank_of(frames.back()) == spec.mode_ranks()[i];
        }
        if (!ok) continue;
        Tensor<S> core{Shape(spec.mode_ranks())};
        for (auto& x : core.entries()) x = rng.draw<S>(sampler);
        auto p = make_point(spec, std::move(frames), std::move(core));
        if (!p.boundary) return p;
    }
    throw std::runtime_error("sample_point: could not draw a point of full multilinear rank on " + spec.to_string());
}

template <class S>
VarietyPoint<S> sample_generic_point(const SubspaceVarietySpec& spec, const Sampler& sampler, std::uint64_t seed,
                                     int max_attempts) {
    const std::size_t want = affine_cone_dimension(spec);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        auto p = sample_point<S>(spec, sampler, derive_seed(seed, {static_cast<std::uint64_t>(attempt)}));
        if (tangent_basis(p).dim() == want) return p;
    }
    throw std::runtime_error("sample_generic_point: tangent rank below " + std::to_string(want) + " after " +
                             std::to_string(max_attempts) + " samples on " + spec.to_string());
}

template <class S>
bool verify_point(const VarietyPoint<S>& p, double tol) {
    const double scale = std::max(1.0, magnitude(p.tensor.entries()));
    for (std::size_t i = 0; i < p.frames.size(); ++i) {
        if (rank_of(p.frames[i]) != p.spec.mode_ranks()[i]) return false;
        // Left annihilator of E_i applied in mode i must kill the tensor.
        const Matrix<S> ann = nullspace(p.frames[i].transpose()).transpose();
        if (ann.rows() == 0) continue;
        const Tensor<S> proj = mode_multiply(p.tensor, ann, i);
        for (const auto& x : proj.entries())
            if (!is_negligible(x, scale, tol)) return false;
    }
    return true;
}

template <class S>
Matrix<S> mode_image(const VarietyPoint<S>& p, std::size_t mode) {
    const std::size_t n = p.spec.order();
    const Matrix<S> flat = flatten(p.core, mode);
    auto core_dims = p.spec.mode_ranks();
    core_dims[mode] = 1;
    std::vector<std::vector<S>> lifted;
    for (std::size_t r = 0; r < flat.rows(); ++r) {
        Tensor<S> t(Shape(core_dims), flat.row(r));
        for (std::size_t j = 0; j < n; ++j)
            if (j != mode) t = mode_multiply(t, p.frames[j], j);
        lifted.push_back(t.entries());
    }
    const Matrix<S> all = Matrix<S>::from_columns(lifted, p.spec.ambient().complement_size(mode));
    std::vector<std::vector<S>> keep;
    for (auto c : independent_columns(all)) keep.push_back(all.column(c));
    return Matrix<S>::from_columns(keep, all.rows());
}

template <class S>
Matrix<S> tangent_generators(const VarietyPoint<S>& p) {
    const Shape& amb = p.spec.ambient();
    const std::size_t n = p.spec.order();
    const std::size_t N = amb.size();
    std::vector<std::vector<S>> gens;

    // Core block E_1 (x) ... (x) E_n.
    std::vector<std::size_t> idx(n, 0);
    const std::size_t core_count = p.spec.core_size();
    for (std::size_t c = 0; c < core_count; ++c) {
        std::vector<S> v{S(1)};
        for (std::size_t i = 0; i < n; ++i) v = kron(v, p.frames[i].column(idx[i]));
        gens.push_back(std::move(v));
        for (std::size_t i = n; i-- > 0;) {
            if (++idx[i] < p.spec.mode_ranks()[i]) break;
            idx[i] = 0;
        }
    }

    // Mode blocks A_i (x) phi(E_i^*).
    for (std::size_t i = 0; i < n; ++i) {
        const Matrix<S> img = mode_image(p, i);
        for (std::size_t m = 0; m < amb[i]; ++m)
            for (std::size_t c = 0; c < img.cols(); ++c) {
                Matrix<S> flat(amb[i], amb.complement_size(i));
                for (std::size_t e = 0; e < img.rows(); ++e) flat(m, e) = img(e, c);
                gens.push_back(unflatten(flat, amb, i).entries());
            }
    }
    return Matrix<S>::from_columns(gens, N);
}

template <class S>
LinearSubspace<S> tangent_basis(const VarietyPoint<S>& p) {
    const Matrix<S> g = tangent_generators(p);
    std::vector<std::vector<S>> cols;
    for (auto c : independent_columns(g)) cols.push_back(g.column(c));
    return {g.rows(), Matrix<S>::from_columns(cols, g.rows())};
}

template <class S>
LinearSubspace<S> conormal_basis(const LinearSubspace<S>& s) {
    if (s.dim() == 0) return {s.ambient_dim, Matrix<S>::identity(s.ambient_dim)};
    return {s.ambient_dim, nullspace(s.basis.transpose())};
}

template <class S>
bool is_tangent_hyperplane(const std::vector<S>& h, const VarietyPoint<S>& p, double tol) {
    const std::size_t N = p.spec.ambient().size();
    if (h.size() != N) throw std::invalid_argument("is_tangent_hyperplane: covector has wrong length");
    const double hn = magnitude(h);
    if (hn == 0.0) throw std::invalid_argument("is_tangent_hyperplane: covector must be nonzero");
    const Matrix<S> g = tangent_generators(p);
    for (std::size_t c = 0; c < g.cols(); ++c) {
        S acc(0);
        for (std::size_t r = 0; r < N; ++r) acc += h[r] * g(r, c);
        if (!is_negligible(acc, hn * magnitude(g.column(c)), tol)) return false;
    }
    return true;
}

#define BTDID_INSTANTIATE(S)                                                                                  \
    template VarietyPoint<S> make_point(const SubspaceVarietySpec&, std::vector<Matrix<S>>, Tensor<S>);      \
    template VarietyPoint<S> sample_point(const SubspaceVarietySpec&, const Sampler&, std::uint64_t);         \
    template VarietyPoint<S> sample_generic_point(const SubspaceVarietySpec&, const Sampler&, std::uint64_t, int); \
    template bool verify_point(const VarietyPoint<S>&, double);                                               \
    template Matrix<S> mode_image(const VarietyPoint<S>&, std::size_t);                                       \
    template Matrix<S> tangent_generators(const VarietyPoint<S>&);                                            \
    template LinearSubspace<S> tangent_basis(const VarietyPoint<S>&);                                         \
    template LinearSubspace<S> conormal_basis(const LinearSubspace<S>&);                                      \
    template bool is_tangent_hyperplane(const std::vector<S>&, const VarietyPoint<S>&, double);

BTDID_INSTANTIATE(Complex)
BTDID_INSTANTIATE(Rational)
#undef BTDID_INSTANTIATE

}  // namespace btdid
