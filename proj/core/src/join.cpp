#include "btdid/join.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "btdid/parallel.hpp"

namespace btdid {
namespace {

const Shape& shared_ambient(const std::vector<SubspaceVarietySpec>& specs) {
    if (specs.empty()) throw std::invalid_argument("join: need at least one variety");
    for (const auto& s : specs)
        if (!(s.ambient() == specs.front().ambient()))
            throw std::invalid_argument("join: varieties live in different ambient spaces");
    return specs.front().ambient();
}

Sampler default_sampler(Arithmetic a) {
    return a == Arithmetic::Rational ? Sampler::integer_uniform() : Sampler::complex_gaussian();
}

template <class S>
Matrix<S> stacked_tangents(const std::vector<VarietyPoint<S>>& points) {
    Matrix<S> m;
    for (const auto& p : points) m = m.hcat(tangent_basis(p).basis);
    return m;
}

template <class S>
std::size_t terracini_trial(const std::vector<SubspaceVarietySpec>& specs, const Sampler& sampler,
                            std::uint64_t seed, std::size_t trial, double tol) {
    std::vector<VarietyPoint<S>> pts;
    for (std::size_t j = 0; j < specs.size(); ++j)
        pts.push_back(sample_generic_point<S>(specs[j], sampler, derive_seed(seed, {trial, j})));
    return rank_of(stacked_tangents(pts), tol);
}

template <class S>
std::string entry_string(const S& x) {
    std::ostringstream os;
    if constexpr (std::is_same_v<S, Rational>) {
        os << x.get_str();
    } else {
        os.precision(17);
        os << x.real() << (x.imag() < 0 ? "" : "+") << x.imag() << "i";
    }
    return os.str();
}

/// Coordinates (in the frame E) of a basis of span(E) ∩ span(F).
template <class S>
Matrix<S> intersection_coordinates(const Matrix<S>& E, const Matrix<S>& F) {
    const Matrix<S> ker = nullspace(E.hcat(S(-1) * F));
    Matrix<S> x(E.cols(), ker.cols());
    for (std::size_t r = 0; r < E.cols(); ++r)
        for (std::size_t c = 0; c < ker.cols(); ++c) x(r, c) = ker(r, c);
    return x;
}

template <class S>
std::optional<VarietyPoint<S>> core_shift_witness(const std::vector<VarietyPoint<S>>& base, std::size_t j, Rng& rng,
                                                  const Sampler& sampler) {
    const auto& pj = base[j];
    std::vector<std::size_t> partners;
    for (std::size_t m = 0; m < base.size(); ++m)
        if (m != j) partners.push_back(m);
    if (partners.empty()) return std::nullopt;
    const auto& pm = base[partners[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(partners.size()) - 1))]];
    if (pm.spec.order() != pj.spec.order()) return std::nullopt;

    std::vector<Matrix<S>> coords;
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < pj.spec.order(); ++i) {
        coords.push_back(intersection_coordinates(pj.frames[i], pm.frames[i]));
        if (coords.back().cols() == 0) return std::nullopt;
        dims.push_back(coords.back().cols());
    }
    Tensor<S> w{Shape(dims)};
    for (auto& x : w.entries()) x = rng.draw<S>(sampler);
    for (std::size_t i = 0; i < coords.size(); ++i) w = mode_multiply(w, coords[i], i);
    if (w.is_zero()) return std::nullopt;

    S t(0);
    while (is_zero_scalar(t)) t = rng.draw<S>(sampler);
    Tensor<S> core = pj.core;
    core += t * w;
    // Reject shifts that only rescale the base point.
    const Matrix<S> pair = Matrix<S>::from_columns({pj.core.entries(), core.entries()}, core.size());
    if (rank_of(pair) < 2) return std::nullopt;
    auto p = make_point(pj.spec, pj.frames, std::move(core));
    if (p.boundary) return std::nullopt;
    return p;
}

/// rank([base | extra]) > base_rank. A growth of the rank modulo a prime
/// already proves growth over Q, so exact elimination is only needed when
/// the modular test is inconclusive.
bool rank_grows(const QMatrix& base, std::size_t base_rank, const QMatrix& extra, double) {
    const QMatrix joined = base.hcat(extra);
    if (modular_rank(joined, kRankPrimes[0]) > base_rank) return true;
    return rational_rank(joined) > base_rank;
}

bool rank_grows(const CMatrix& base, std::size_t base_rank, const CMatrix& extra, double tol) {
    return numerical_rank(base.hcat(extra), tol) > base_rank;
}

}  // namespace

std::size_t default_trials(Arithmetic a) { return a == Arithmetic::Rational ? 3 : 10; }

std::size_t expected_join_dim(const std::vector<SubspaceVarietySpec>& specs) {
    const Shape& amb = shared_ambient(specs);
    std::size_t sum = 0;
    for (const auto& s : specs) sum += affine_cone_dimension(s);
    return std::min(sum, amb.size());
}

ManyJoinBounds many_join_bounds(const std::vector<SubspaceVarietySpec>& specs) {
    const Shape& amb = shared_ambient(specs);
    ManyJoinBounds b;
    b.nondefective_certificate = true;
    for (std::size_t i = 0; i < amb.order(); ++i) {
        std::size_t total = 0;
        for (const auto& s : specs) total += s.mode_ranks()[i];
        if (amb[i] < total) b.nondefective_certificate = false;
    }
    long cores = 0;
    for (const auto& s : specs) cores += static_cast<long>(s.core_size());
    b.defect_lower_bound = std::max(0L, cores - static_cast<long>(amb.size()));
    return b;
}

TwoJoinPrediction defect_two_join_formula(const std::array<std::size_t, 3>& ambient,
                                          const std::array<std::size_t, 3>& first,
                                          const std::array<std::size_t, 3>& second) {
    TwoJoinPrediction p;
    const char* names = "abc";
    for (const auto* k : {&first, &second}) {
        for (std::size_t i = 0; i < 3; ++i)
            if ((*k)[i] < 1 || (*k)[i] > ambient[i]) throw std::invalid_argument("defect_two_join_formula: rank outside [1, dim]");
    }
    for (int which = 0; which < 2; ++which) {
        const auto& k = which == 0 ? first : second;
        for (std::size_t i = 0; i < 3; ++i) {
            const std::size_t j = (i + 1) % 3, l = (i + 2) % 3;
            if (k[i] > (ambient[j] - k[j]) * (ambient[l] - k[l])) {
                p.within_hypothesis = false;
                std::ostringstream os;
                os << names[i] << (which ? "''" : "'") << " <= (" << names[std::min(j, l)] << "-" << names[std::min(j, l)]
                   << (which ? "''" : "'") << ")(" << names[std::max(j, l)] << "-" << names[std::max(j, l)]
                   << (which ? "''" : "'") << ")";
                p.failed_hypotheses.push_back(os.str());
            }
        }
    }
    p.defect = 1;
    for (std::size_t i = 0; i < 3; ++i) {
        const long overlap = static_cast<long>(first[i] + second[i]) - static_cast<long>(ambient[i]);
        p.defect *= std::max(0L, overlap);
    }
    return p;
}

JoinReport terracini_join_dim(const std::vector<SubspaceVarietySpec>& specs, const TerraciniOptions& opts) {
    const Shape& amb = shared_ambient(specs);
    JoinReport rep;
    rep.specs = specs;
    rep.ambient_dim = amb.size();
    for (const auto& s : specs) rep.sum_affine_dims += affine_cone_dimension(s);
    rep.expected_affine_dim = std::min(rep.sum_affine_dims, rep.ambient_dim);
    rep.arithmetic = opts.arithmetic;
    rep.seed = opts.seed;
    rep.trials = opts.trials ? opts.trials : default_trials(opts.arithmetic);
    const Sampler sampler = opts.sampler.value_or(default_sampler(opts.arithmetic));

    // Trials run in rounds of thread_budget(); stop after the round where the
    // expected dimension is reached, since no trial can exceed it.
    const std::size_t round = std::max<std::size_t>(1, thread_budget());
    for (std::size_t start = 0; start < rep.trials; start += round) {
        const std::size_t n = std::min(round, rep.trials - start);
        std::vector<std::size_t> ranks(n);
        parallel_for(n, [&](std::size_t k) {
            ranks[k] = opts.arithmetic == Arithmetic::Rational
                           ? terracini_trial<Rational>(specs, sampler, opts.seed, start + k, opts.tol)
                           : terracini_trial<Complex>(specs, sampler, opts.seed, start + k, opts.tol);
        });
        rep.trial_ranks.insert(rep.trial_ranks.end(), ranks.begin(), ranks.end());
        rep.computed_affine_dim = *std::max_element(rep.trial_ranks.begin(), rep.trial_ranks.end());
        if (rep.computed_affine_dim >= rep.expected_affine_dim) break;
    }
    rep.defect = static_cast<long>(rep.sum_affine_dims) - static_cast<long>(rep.computed_affine_dim);

    const ManyJoinBounds bounds = many_join_bounds(specs);
    bool formula_backed = bounds.defect_lower_bound > 0;
    if (specs.size() == 2 && amb.order() == 3) {
        const auto& k1 = specs[0].mode_ranks();
        const auto& k2 = specs[1].mode_ranks();
        const auto pred = defect_two_join_formula({amb[0], amb[1], amb[2]}, {k1[0], k1[1], k1[2]}, {k2[0], k2[1], k2[2]});
        if (pred.within_hypothesis) {
            formula_backed = formula_backed || pred.defect > 0;
            if (pred.defect != rep.defect)
                rep.notes.push_back("two-join formula predicts defect " + std::to_string(pred.defect));
        } else {
            std::string failed;
            for (const auto& h : pred.failed_hypotheses) failed += (failed.empty() ? "" : ", ") + h;
            rep.notes.push_back("two-join formula not applicable: " + failed + " fails");
        }
    }

    if (rep.defect == 0) {
        const bool exact_hit =
            opts.arithmetic == Arithmetic::Rational && rep.computed_affine_dim == rep.expected_affine_dim;
        rep.certified = exact_hit || bounds.nondefective_certificate;
        rep.evidence = rep.certified ? "certified" : "numerical evidence";
        if (!exact_hit && bounds.nondefective_certificate) rep.notes.push_back("non-defective by direct-sum containment");
    } else {
        rep.certified = false;
        rep.evidence = formula_backed ? "formula-backed" : "numerical evidence";
        if (rep.computed_affine_dim == rep.ambient_dim) rep.notes.push_back("join fills the ambient space");
    }
    if (opts.arithmetic == Arithmetic::Float) rep.notes.push_back("float ranks at relative tolerance");
    return rep;
}

template <class S>
bool tangent_containment_probe(const std::vector<VarietyPoint<S>>& base_points, const VarietyPoint<S>& witness,
                               double tol) {
    if (base_points.empty()) throw std::invalid_argument("tangent_containment_probe: no base points");
    for (const auto& p : base_points)
        if (!(p.spec.ambient() == witness.spec.ambient()))
            throw std::invalid_argument("tangent_containment_probe: ambient mismatch");
    const Matrix<S> base = stacked_tangents(base_points);
    return !rank_grows(base, rank_of(base, tol), tangent_basis(witness).basis, tol);
}

const char* to_string(WitnessStrategy s) { return s == WitnessStrategy::Generic ? "generic" : "core-shift"; }

template <class S>
TwdReport twd_probe_at(const std::vector<VarietyPoint<S>>& base_points, std::size_t witness_spec,
                       const TwdOptions& opts) {
    if (witness_spec >= base_points.size()) throw std::invalid_argument("twd_probe: witness index out of range");
    TwdReport rep;
    for (const auto& p : base_points) rep.base_specs.push_back(p.spec);
    rep.witness_spec = witness_spec;
    rep.strategy = opts.strategy;
    rep.arithmetic = arithmetic_of<S>();
    rep.trials = opts.witnesses;
    rep.seed = opts.seed;
    const Sampler sampler = default_sampler(rep.arithmetic);

    const Matrix<S> base = stacked_tangents(base_points);
    const std::size_t r0 = rank_of(base, opts.tol);
    std::size_t skipped = 0;
    for (std::size_t w = 0; w < opts.witnesses; ++w) {
        std::optional<VarietyPoint<S>> witness;
        if (opts.strategy == WitnessStrategy::Generic) {
            witness = sample_point<S>(base_points[witness_spec].spec, sampler, derive_seed(opts.seed, {0x7717, w}));
        } else {
            Rng rng(derive_seed(opts.seed, {0x5417, w}));
            witness = core_shift_witness(base_points, witness_spec, rng, sampler);
        }
        if (!witness) {
            ++skipped;
            continue;
        }
        ++rep.witnesses_tried;
        if (!rank_grows(base, r0, tangent_basis(*witness).basis, opts.tol)) {
            rep.containment_found = true;
            std::vector<std::string> entries;
            for (const auto& x : witness->tensor.entries()) entries.push_back(entry_string(x));
            rep.witness_entries = std::move(entries);
            break;
        }
    }
    if (skipped) rep.notes.push_back(std::to_string(skipped) + " witness draws produced no admissible point");
    rep.notes.push_back("random-witness probe: evidence, not a decision procedure");
    return rep;
}

TwdReport twd_probe(const std::vector<SubspaceVarietySpec>& base_specs, std::size_t witness_spec,
                    const TwdOptions& opts) {
    shared_ambient(base_specs);
    auto run = [&]<class S>() {
        const Sampler sampler = default_sampler(arithmetic_of<S>());
        std::vector<VarietyPoint<S>> base;
        for (std::size_t j = 0; j < base_specs.size(); ++j)
            base.push_back(sample_generic_point<S>(base_specs[j], sampler, derive_seed(opts.seed, {0xba5e, j})));
        return twd_probe_at(base, witness_spec, opts);
    };
    return opts.arithmetic == Arithmetic::Rational ? run.template operator()<Rational>()
                                                   : run.template operator()<Complex>();
}

template bool tangent_containment_probe(const std::vector<VarietyPoint<Complex>>&, const VarietyPoint<Complex>&, double);
template bool tangent_containment_probe(const std::vector<VarietyPoint<Rational>>&, const VarietyPoint<Rational>&,
                                        double);
template TwdReport twd_probe_at(const std::vector<VarietyPoint<Complex>>&, std::size_t, const TwdOptions&);
template TwdReport twd_probe_at(const std::vector<VarietyPoint<Rational>>&, std::size_t, const TwdOptions&);

}  // namespace btdid
