#include "btdid/als.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "btdid/parallel.hpp"
#include "btdid/random.hpp"
#include "btdid/rank.hpp"

namespace btdid {
namespace {

using Eigen::Index;
using Eigen::MatrixXcd;

Index ix(std::size_t n) { return static_cast<Index>(n); }

/// Factors in stacked form: A is I x R, B is J x sum L, C is K x sum L.
struct Factors {
    MatrixXcd A, B, C;
    std::vector<std::size_t> off;  ///< column offset of block r in B and C
};

std::vector<std::size_t> offsets(const BlockTermSpec& spec) {
    std::vector<std::size_t> off{0};
    for (auto L : spec.L) off.push_back(off.back() + L);
    return off;
}

Factors from_blocks(const BlockTermSpec& spec, const std::vector<Block<Complex>>& blocks) {
    Factors f;
    f.off = offsets(spec);
    const std::size_t S = f.off.back();
    f.A = MatrixXcd::Zero(ix(spec.I), ix(spec.R()));
    f.B = MatrixXcd::Zero(ix(spec.J), ix(S));
    f.C = MatrixXcd::Zero(ix(spec.K), ix(S));
    for (std::size_t r = 0; r < spec.R(); ++r) {
        const auto& b = blocks[r];
        if (b.a.size() != spec.I || b.B.rows() != spec.J || b.C.rows() != spec.K || b.B.cols() != spec.L[r] ||
            b.C.cols() != spec.L[r])
            throw std::invalid_argument("als: initial block " + std::to_string(r) + " does not match the spec");
        for (std::size_t i = 0; i < spec.I; ++i) f.A(ix(i), ix(r)) = b.a[i];
        f.B.middleCols(ix(f.off[r]), ix(spec.L[r])) = to_eigen(b.B);
        f.C.middleCols(ix(f.off[r]), ix(spec.L[r])) = to_eigen(b.C);
    }
    return f;
}

std::vector<Block<Complex>> to_blocks(const BlockTermSpec& spec, const Factors& f) {
    std::vector<Block<Complex>> out;
    for (std::size_t r = 0; r < spec.R(); ++r) {
        Block<Complex> b;
        b.a.assign(f.A.col(ix(r)).data(), f.A.col(ix(r)).data() + spec.I);
        b.B = from_eigen(f.B.middleCols(ix(f.off[r]), ix(spec.L[r])));
        b.C = from_eigen(f.C.middleCols(ix(f.off[r]), ix(spec.L[r])));
        out.push_back(std::move(b));
    }
    return out;
}

/// W[r, j K + k] = X_r[j, k].
MatrixXcd design_a(const BlockTermSpec& spec, const Factors& f) {
    MatrixXcd W(ix(spec.R()), ix(spec.J * spec.K));
    for (std::size_t r = 0; r < spec.R(); ++r) {
        const MatrixXcd X = f.B.middleCols(ix(f.off[r]), ix(spec.L[r])) *
                            f.C.middleCols(ix(f.off[r]), ix(spec.L[r])).transpose();
        for (std::size_t j = 0; j < spec.J; ++j)
            for (std::size_t k = 0; k < spec.K; ++k) W(ix(r), ix(j * spec.K + k)) = X(ix(j), ix(k));
    }
    return W;
}

/// D[(r, l), i n + m] = a_r[i] F_r[m, l] for F = C (mode 2) or F = B (mode 3).
MatrixXcd design_bc(const BlockTermSpec& spec, const Factors& f, const MatrixXcd& F) {
    const std::size_t n = static_cast<std::size_t>(F.rows());
    MatrixXcd D(ix(f.off.back()), ix(spec.I * n));
    for (std::size_t r = 0; r < spec.R(); ++r)
        for (std::size_t l = 0; l < spec.L[r]; ++l) {
            const Index row = ix(f.off[r] + l);
            for (std::size_t i = 0; i < spec.I; ++i)
                for (std::size_t m = 0; m < n; ++m) D(row, ix(i * n + m)) = f.A(ix(i), ix(r)) * F(ix(m), row);
        }
    return D;
}

/// argmin_Z ||Yf - Z D||_F through the normal equations (D D^H) Z^H = D Yf^H.
MatrixXcd least_squares(const MatrixXcd& D, const MatrixXcd& Yf, bool& ridged) {
    MatrixXcd G = D * D.adjoint();
    const MatrixXcd rhs = D * Yf.adjoint();
    const double trace = G.trace().real();
    if (trace == 0.0) {
        ridged = true;
        return MatrixXcd::Zero(Yf.rows(), D.rows());
    }
    Eigen::LLT<MatrixXcd> llt(G);
    auto well_posed = [&] {
        if (llt.info() != Eigen::Success) return false;
        const auto d = llt.matrixLLT().diagonal().real().cwiseAbs();
        return d.minCoeff() * d.minCoeff() > 1e-14 * d.maxCoeff() * d.maxCoeff();
    };
    if (!well_posed()) {
        ridged = true;
        G.diagonal().array() += 1e-12 * trace;
        llt.compute(G);
    }
    return llt.solve(rhs).adjoint();
}

Factors random_factors(const BlockTermSpec& spec, std::uint64_t seed) {
    Rng rng(seed);
    const auto g = Sampler::complex_gaussian();
    Factors f;
    f.off = offsets(spec);
    f.A = MatrixXcd(ix(spec.I), ix(spec.R()));
    f.B = MatrixXcd(ix(spec.J), ix(f.off.back()));
    f.C = MatrixXcd(ix(spec.K), ix(f.off.back()));
    for (auto* m : {&f.A, &f.B, &f.C})
        for (Index c = 0; c < m->cols(); ++c)
            for (Index r = 0; r < m->rows(); ++r) (*m)(r, c) = rng.draw_complex(g);
    return f;
}

Factors mode1_svd_factors(const CTensor& Y, const BlockTermSpec& spec, std::uint64_t seed) {
    Factors f = random_factors(spec, seed);
    const MatrixXcd Y1 = to_eigen(flatten(Y, 0));
    Eigen::BDCSVD<MatrixXcd> svd(Y1, Eigen::ComputeThinU);
    const Index usable = std::min<Index>(svd.matrixU().cols(), ix(spec.R()));
    f.A.leftCols(usable) = svd.matrixU().leftCols(usable);
    for (std::size_t r = 0; r < spec.R(); ++r) {
        // Contract Y with conj(a_r) in mode 1 and keep the leading L_r singular triplets.
        MatrixXcd X = MatrixXcd::Zero(ix(spec.J), ix(spec.K));
        for (std::size_t i = 0; i < spec.I; ++i)
            for (std::size_t j = 0; j < spec.J; ++j)
                for (std::size_t k = 0; k < spec.K; ++k)
                    X(ix(j), ix(k)) += std::conj(f.A(ix(i), ix(r))) * Y[(i * spec.J + j) * spec.K + k];
        if (X.norm() == 0.0) continue;
        Eigen::BDCSVD<MatrixXcd> xs(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Index L = ix(spec.L[r]);
        f.B.middleCols(ix(f.off[r]), L) = xs.matrixU().leftCols(L) * xs.singularValues().head(L).asDiagonal();
        f.C.middleCols(ix(f.off[r]), L) = xs.matrixV().leftCols(L).conjugate();
    }
    return f;
}

std::vector<Complex> kron_vec(const std::vector<Complex>& a, const CMatrix& X) { return kron(a, X.data()); }

double distance(const std::vector<Complex>& u, const std::vector<Complex>& v) {
    double d = 0;
    for (std::size_t i = 0; i < u.size(); ++i) d += std::norm(u[i] - v[i]);
    return std::sqrt(d);
}

double norm(const std::vector<Complex>& u) {
    double d = 0;
    for (const auto& x : u) d += std::norm(x);
    return std::sqrt(d);
}

}  // namespace

CTensor BTDSolution::tensor() const {
    std::vector<std::vector<Complex>> a;
    std::vector<CMatrix> X;
    for (const auto& b : blocks) {
        a.push_back(b.a);
        X.push_back(b.X());
    }
    return assemble(spec.shape(), a, X);
}

BTDSolution als_fit(const CTensor& Y, const BlockTermSpec& spec, const AlsInit& init, const AlsOptions& opts) {
    if (!(Y.shape() == spec.shape()))
        throw std::invalid_argument("als_fit: tensor shape does not match " + spec.to_string());
    BTDSolution sol;
    sol.spec = spec;
    const double ynorm = frobenius_norm(CMatrix(1, Y.size(), Y.entries()));
    if (ynorm == 0.0) {
        for (auto L : spec.L) sol.blocks.push_back({std::vector<Complex>(spec.I), CMatrix(spec.J, L), CMatrix(spec.K, L)});
        sol.history = {0.0};
        sol.notes.push_back("zero tensor: zero decomposition");
        return sol;
    }

    Factors f;
    switch (init.kind) {
        case AlsInit::Kind::Random: f = random_factors(spec, init.seed); break;
        case AlsInit::Kind::Mode1Svd: f = mode1_svd_factors(Y, spec, init.seed); break;
        case AlsInit::Kind::Given:
            if (!init.given || !(init.given->spec == spec))
                throw std::invalid_argument("als_fit: given initialization does not match the spec");
            f = from_blocks(spec, init.given->blocks);
            break;
    }

    const MatrixXcd Y1 = to_eigen(flatten(Y, 0)), Y2 = to_eigen(flatten(Y, 1)), Y3 = to_eigen(flatten(Y, 2));
    sol.history.push_back((Y1 - f.A * design_a(spec, f)).norm() / ynorm);
    bool ridged_any = false;
    std::size_t accepted = 0;
    double step = 1.0;
    for (std::size_t sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
        bool ridged = false;
        const Factors before = f;
        f.A = least_squares(design_a(spec, f), Y1, ridged);
        f.B = least_squares(design_bc(spec, f, f.C), Y2, ridged);
        const MatrixXcd N = design_bc(spec, f, f.B);
        f.C = least_squares(N, Y3, ridged);
        double res = (Y3 - f.C * N).norm() / ynorm;
        if (opts.extrapolate && sweep > 2) {
            // Step along the last sweep's direction; kept only if it lowers the residual.
            const double step_now = step;
            Factors g = f;
            g.A += step_now * (f.A - before.A);
            g.B += step_now * (f.B - before.B);
            g.C += step_now * (f.C - before.C);
            const double gres = (Y1 - g.A * design_a(spec, g)).norm() / ynorm;
            if (gres < res) {
                f = std::move(g);
                res = gres;
                ++accepted;
                step = std::min(step * 1.5, 64.0);
            } else {
                step = std::max(1.0, step / 2);
            }
        }
        sol.history.push_back(res);
        sol.sweeps = sweep;
        if (ridged && !ridged_any) sol.notes.push_back("ridge-stabilized solve from sweep " + std::to_string(sweep));
        ridged_any = ridged_any || ridged;
        const double prev = sol.history[sol.history.size() - 2];
        if (res <= opts.floor_tol || std::abs(prev - res) < opts.rel_tol * res) break;
    }
    sol.residual = sol.history.back();
    sol.blocks = to_blocks(spec, f);
    if (accepted) sol.notes.push_back(std::to_string(accepted) + " extrapolation steps accepted");
    return sol;
}

CanonicalSolution canonicalize(const BTDSolution& s, double tol) {
    CanonicalSolution c;
    c.spec = s.spec;
    c.residual = s.residual;
    for (std::size_t r = 0; r < s.blocks.size(); ++r) {
        const auto& b = s.blocks[r];
        const double n = norm(b.a);
        if (n < tol) throw std::domain_error("canonicalize: degenerate block " + std::to_string(r) + " (a_r = 0)");
        Complex phase(1.0, 0.0);
        for (const auto& x : b.a)
            if (std::abs(x) > tol * n) {
                phase = std::abs(x) / x;
                break;
            }
        CanonicalBlock cb;
        cb.L = s.spec.L[r];
        for (const auto& x : b.a) cb.a.push_back(x * phase / n);
        cb.X = (n / phase) * b.X();
        Eigen::BDCSVD<MatrixXcd> svd(to_eigen(cb.X), Eigen::ComputeThinU);
        cb.basis = from_eigen(svd.matrixU().leftCols(ix(std::min<std::size_t>(cb.L, svd.matrixU().cols()))));
        c.blocks.push_back(std::move(cb));
    }
    auto key = [](const CanonicalBlock& b) {
        std::vector<long long> k{static_cast<long long>(b.L)};
        for (const auto& x : b.a) {
            k.push_back(std::llround(x.real() * 1e6));
            k.push_back(std::llround(x.imag() * 1e6));
        }
        return k;
    };
    std::stable_sort(c.blocks.begin(), c.blocks.end(),
                     [&](const CanonicalBlock& x, const CanonicalBlock& y) { return key(x) < key(y); });
    return c;
}

BTDSolution to_solution(const CanonicalSolution& c) {
    BTDSolution s;
    s.residual = c.residual;
    std::vector<std::size_t> L;
    for (const auto& b : c.blocks) {
        Eigen::BDCSVD<MatrixXcd> svd(to_eigen(b.X), Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Index l = ix(b.L);
        Block<Complex> blk;
        blk.a = b.a;
        blk.B = from_eigen(svd.matrixU().leftCols(l) * svd.singularValues().head(l).asDiagonal());
        blk.C = from_eigen(svd.matrixV().leftCols(l).conjugate());
        s.blocks.push_back(std::move(blk));
        L.push_back(b.L);
    }
    s.spec = c.spec;
    return s;
}

bool solutions_equivalent(const CanonicalSolution& s1, const CanonicalSolution& s2, double tol) {
    if (!(s1.spec == s2.spec) || s1.blocks.size() != s2.blocks.size()) return false;
    const std::size_t R = s1.blocks.size();
    std::vector<std::vector<Complex>> t1, t2;
    for (std::size_t r = 0; r < R; ++r) {
        t1.push_back(kron_vec(s1.blocks[r].a, s1.blocks[r].X));
        t2.push_back(kron_vec(s2.blocks[r].a, s2.blocks[r].X));
    }
    auto close = [&](std::size_t i, std::size_t j) { return distance(t1[i], t2[j]) <= tol * norm(t1[i]); };
    // Blocks are sorted by L; match within each run of equal L.
    for (std::size_t lo = 0; lo < R;) {
        std::size_t hi = lo;
        while (hi < R && s1.blocks[hi].L == s1.blocks[lo].L) ++hi;
        for (std::size_t r = lo; r < hi; ++r)
            if (s2.blocks[r].L != s1.blocks[lo].L) return false;
        std::vector<std::size_t> perm(hi - lo);
        std::iota(perm.begin(), perm.end(), lo);
        bool ok = false;
        if (perm.size() <= 7) {
            do {
                ok = true;
                for (std::size_t i = 0; i < perm.size() && ok; ++i) ok = close(lo + i, perm[i]);
            } while (!ok && std::next_permutation(perm.begin(), perm.end()));
        } else {
            std::vector<bool> used(perm.size(), false);
            ok = true;
            for (std::size_t i = lo; i < hi && ok; ++i) {
                ok = false;
                for (std::size_t j = lo; j < hi; ++j)
                    if (!used[j - lo] && close(i, j)) {
                        used[j - lo] = true;
                        ok = true;
                        break;
                    }
            }
        }
        if (!ok) return false;
        lo = hi;
    }
    return true;
}

JacobianRank parametrization_jacobian_rank(const BTDSolution& s, double tol) {
    const auto& spec = s.spec;
    const std::size_t I = spec.I, J = spec.J, K = spec.K;
    JacobianRank jr;
    jr.rows = I * J * K;
    for (auto L : spec.L) {
        jr.params += I + J * L + K * L;
        jr.gauge += L * L + 1;
    }
    MatrixXcd Jac = MatrixXcd::Zero(ix(jr.rows), ix(jr.params));
    auto at = [&](std::size_t i, std::size_t j, std::size_t k) { return ix((i * J + j) * K + k); };
    Index col = 0;
    for (std::size_t r = 0; r < spec.R(); ++r) {
        const auto& b = s.blocks[r];
        const CMatrix X = b.X();
        for (std::size_t i = 0; i < I; ++i, ++col)
            for (std::size_t j = 0; j < J; ++j)
                for (std::size_t k = 0; k < K; ++k) Jac(at(i, j, k), col) = X(j, k);
        for (std::size_t j = 0; j < J; ++j)
            for (std::size_t l = 0; l < spec.L[r]; ++l, ++col)
                for (std::size_t i = 0; i < I; ++i)
                    for (std::size_t k = 0; k < K; ++k) Jac(at(i, j, k), col) = b.a[i] * b.C(k, l);
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t l = 0; l < spec.L[r]; ++l, ++col)
                for (std::size_t i = 0; i < I; ++i)
                    for (std::size_t j = 0; j < J; ++j) Jac(at(i, j, k), col) = b.a[i] * b.B(j, l);
    }
    jr.rank = numerical_rank(from_eigen(Jac), tol);
    return jr;
}

MultistartResult multistart_fit(const CTensor& Y, const BlockTermSpec& spec, std::size_t starts, std::uint64_t seed,
                                const MultistartOptions& opts) {
    MultistartResult out;
    out.fits.resize(starts);
    parallel_for(starts, [&](std::size_t m) {
        out.fits[m] = als_fit(Y, spec, AlsInit::random(derive_seed(seed, {m})), opts.als);
    });
    std::vector<std::size_t> order(starts);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return out.fits[x].residual < out.fits[y].residual; });
    if (!order.empty()) out.best = order.front();
    for (auto m : order) {
        if (out.fits[m].residual > opts.converge_threshold) continue;
        out.converged.push_back(m);
        const CanonicalSolution c = canonicalize(out.fits[m]);
        std::size_t cls = out.classes.size();
        for (std::size_t k = 0; k < out.classes.size(); ++k)
            if (solutions_equivalent(out.classes[k], c, opts.class_tol)) {
                cls = k;
                break;
            }
        if (cls == out.classes.size()) out.classes.push_back(c);
        out.class_of.push_back(cls);
    }
    return out;
}

bool matches(Verdict v, std::size_t classes, bool continuum) {
    switch (v) {
        case Verdict::EssentiallyUnique: return classes == 1 && !continuum;
        case Verdict::PartiallyUnique: return classes >= 1 && !continuum;
        case Verdict::InfinitelyMany: return classes > 1 || continuum;
        case Verdict::Unknown: return true;
    }
    return false;
}

UniquenessReport uniqueness_probe(const BlockTermSpec& spec, std::size_t trials, std::uint64_t seed,
                                  const MultistartOptions& opts) {
    if (trials < 2) throw std::invalid_argument("uniqueness_probe: need at least 2 trials");
    UniquenessReport rep;
    rep.spec = spec;
    rep.trials = trials;
    rep.seed = seed;
    rep.verdict = evaluate_theorem(spec).verdict;
    const CTensor Y = synth_block_term<Complex>(spec, seed, Sampler::complex_gaussian()).Y;
    const MultistartResult ms = multistart_fit(Y, spec, trials, derive_seed(seed, {0xa15}), opts);
    for (const auto& f : ms.fits) rep.residuals.push_back(f.residual);
    rep.converged_count = ms.converged.size();
    rep.distinct_classes = ms.classes.size();
    rep.class_representatives = ms.classes;
    // Excess Jacobian kernel is a property of generic parameter points, so the
    // best fit serves even when no start converged.
    const std::size_t at = ms.converged.empty() ? *ms.best : ms.converged.front();
    rep.jacobian = parametrization_jacobian_rank(ms.fits[at]);
    rep.continuum_evidence = rep.jacobian->excess_kernel();
    if (ms.converged.empty()) {
        rep.inconclusive = true;
        rep.notes.push_back("no start reached the convergence threshold; jacobian taken at the best fit");
    }
    rep.matches_verdict = matches(rep.verdict, rep.distinct_classes, rep.continuum_evidence);
    if (rep.verdict == Verdict::Unknown) rep.notes.push_back("no verdict to compare against");
    if (rep.verdict == Verdict::PartiallyUnique)
        rep.notes.push_back("class count is the number observed, not a count of all decompositions");
    return rep;
}

}  // namespace btdid
