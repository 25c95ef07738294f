#include "entfloor/solver.hpp"
#include <cstdlib>
#include <cstdio>

#include "nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace entfloor {

std::string to_string(Functional f) {
    switch (f) {
        case Functional::PurityQ: return "purity-Q";
        case Functional::Entropy: return "entropy";
        case Functional::MutualInfo: return "mutual-info";
        case Functional::ConnectedCzz: return "connected-czz";
    }
    return "?";
}

Functional functional_from_string(const std::string& name) {
    if (name == "purity-Q") return Functional::PurityQ;
    if (name == "entropy") return Functional::Entropy;
    if (name == "mutual-info") return Functional::MutualInfo;
    if (name == "connected-czz") return Functional::ConnectedCzz;
    throw std::invalid_argument("unknown functional '" + name + "'");
}

ConstraintSet& ConstraintSet::pauli(const std::string& word, double target, double tol) {
    linear.push_back({Observable::from_word(word), target, tol});
    return *this;
}

ConstraintSet& ConstraintSet::functional(Functional fn, double target, double tol) {
    nonlinear.push_back({fn, target, tol});
    return *this;
}

namespace {

// raw-matrix functionals (no validation; used in the inner loop)

double entropy_raw(const CMat& m) {
    Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double e = es.eigenvalues()(i);
        if (e > kSupportTol) s -= e * std::log2(e);
    }
    return s;
}

double connected_czz_raw(const CMat& m) {
    // diagonal signs of z x z in the computational basis
    double joint = m(0, 0).real() - m(1, 1).real() - m(2, 2).real() + m(3, 3).real();
    double z1 = m(0, 0).real() + m(1, 1).real() - m(2, 2).real() - m(3, 3).real();
    double z2 = m(0, 0).real() - m(1, 1).real() + m(2, 2).real() - m(3, 3).real();
    return joint - z1 * z2;
}

double mutual_info_raw(const CMat& m) {
    double sa = entropy_raw(partial_trace_to_qubit(m, 2, 0));
    double sb = entropy_raw(partial_trace_to_qubit(m, 2, 1));
    return sa + sb - entropy_raw(m);
}

double functional_raw(Functional f, const CMat& m) {
    switch (f) {
        case Functional::PurityQ: return (m * m).trace().real();
        case Functional::Entropy: return entropy_raw(m);
        case Functional::MutualInfo: return mutual_info_raw(m);
        case Functional::ConnectedCzz: return connected_czz_raw(m);
    }
    return 0.0;
}

struct Objective {
    const ConstraintSet* cs;
    int dim, qubits;
    unsigned pt_bitmask;  // index-bit mask of the transposed qubit
    double weight;
    std::vector<double> multipliers;  // augmented-Lagrangian estimates

    // rho = T^dag T / Tr from a lower-triangular factor: any PSD matrix has
    // one, and the halved parameter count keeps the simplex search tight
    int param_count() const { return dim + dim * (dim - 1); }

    CMat rho_from(const std::vector<double>& x) const {
        CMat t = CMat::Zero(dim, dim);
        int k = 0;
        for (int i = 0; i < dim; ++i) {
            t(i, i) = x[k++];
            for (int j = 0; j < i; ++j) {
                t(i, j) = complexd(x[k], x[k + 1]);
                k += 2;
            }
        }
        CMat rho = t.adjoint() * t;
        double tr = rho.trace().real();
        if (tr < 1e-300) rho = CMat::Identity(dim, dim) / dim;
        else rho /= tr;
        return rho;
    }

    double log_neg(const CMat& rho) const {
        CMat pt(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) {
                int rr = (r & ~int(pt_bitmask)) | (c & int(pt_bitmask));
                int cc = (c & ~int(pt_bitmask)) | (r & int(pt_bitmask));
                pt(rr, cc) = rho(r, c);
            }
        Eigen::SelfAdjointEigenSolver<CMat> es(pt, Eigen::EigenvaluesOnly);
        double tn = 0.0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            tn += std::abs(es.eigenvalues()(i));
        return std::log2(std::max(tn, 1e-300));
    }

    void residuals(const CMat& rho, std::vector<double>& out) const {
        out.clear();
        for (const auto& lc : cs->linear)
            out.push_back((lc.obs.matrix * rho).trace().real() - lc.target);
        for (const auto& nc : cs->nonlinear)
            out.push_back(functional_raw(nc.fn, rho) - nc.target);
    }

    // augmented Lagrangian: the linear multiplier term lets the residuals
    // reach zero without an unbounded quadratic weight
    double operator()(const std::vector<double>& x) const {
        CMat rho = rho_from(x);
        thread_local std::vector<double> res;
        residuals(rho, res);
        double acc = log_neg(rho);
        for (size_t i = 0; i < res.size(); ++i) {
            double mu = i < multipliers.size() ? multipliers[i] : 0.0;
            acc += mu * res[i] + weight * res[i] * res[i];
        }
        return acc;
    }

    bool feasible(const CMat& rho, double* worst_scaled = nullptr) const {
        for (const auto& lc : cs->linear) {
            double v = std::abs((lc.obs.matrix * rho).trace().real() - lc.target);
            if (worst_scaled) *worst_scaled = std::max(*worst_scaled, v);
            if (v > lc.tolerance) return false;
        }
        for (const auto& nc : cs->nonlinear) {
            double v = std::abs(functional_raw(nc.fn, rho) - nc.target);
            if (worst_scaled) *worst_scaled = std::max(*worst_scaled, v);
            if (v > nc.tolerance) return false;
        }
        return true;
    }
};

// Lower-triangular factor of a density matrix via the reversed Cholesky
// (regularized so rank-deficient states factorize).
bool pack_state(const Objective& obj, const CMat& rho, std::vector<double>& out) {
    int dn = obj.dim;
    CMat rev(dn, dn);
    for (int r = 0; r < dn; ++r)
        for (int c = 0; c < dn; ++c) rev(r, c) = rho(dn - 1 - r, dn - 1 - c);
    Eigen::LLT<CMat> llt(rev + 1e-12 * CMat::Identity(dn, dn));
    if (llt.info() != Eigen::Success) return false;
    CMat lower_rev = llt.matrixL();
    CMat tfac = CMat::Zero(dn, dn);  // T(i,j) = conj(L(dn-1-j, dn-1-i)), lower triangular
    for (int i = 0; i < dn; ++i)
        for (int j = 0; j <= i; ++j) tfac(i, j) = std::conj(lower_rev(dn - 1 - j, dn - 1 - i));
    out.resize(obj.param_count());
    int k = 0;
    for (int r = 0; r < dn; ++r) {
        out[k++] = tfac(r, r).real();
        for (int c = 0; c < r; ++c) {
            out[k] = tfac(r, c).real();
            out[k + 1] = tfac(r, c).imag();
            k += 2;
        }
    }
    return true;
}

// Symmetrization moves: averaging with a conjugated copy never raises the
// log-negativity, and the penalty term rejects any move that breaks the
// constraints, so these are safe greedy candidates.
bool try_symmetrize(const Objective& obj, std::vector<double>& x, double& fval) {
    static const std::vector<std::string> words2 = {"zz", "z1", "1z", "xx", "x1", "1x", "yy"};
    static const std::vector<std::string> words3 = {"zzz", "zz1", "1zz", "z1z", "xxx"};
    const auto& words = obj.qubits == 2 ? words2 : words3;
    bool improved = false;
    CMat rho = obj.rho_from(x);
    for (const auto& w : words) {
        CMat u = pauli_word_matrix(w);
        CMat avg = 0.5 * (rho + u * rho * u);
        std::vector<double> cand;
        if (!pack_state(obj, avg, cand)) continue;
        double f = obj(cand);
        if (f < fval - 1e-14) {
            x = cand;
            fval = f;
            rho = obj.rho_from(x);
            improved = true;
        }
    }
    return improved;
}

// Rank truncation: rebuilds T from rho with spectral weight below the
// threshold removed. Constraint faces often sit at rank-deficient states that
// the quadratic penalty approaches only slowly; the snap is kept when it
// lowers the augmented objective.
bool try_spectral_snap(const Objective& obj, std::vector<double>& x, double& fval) {
    CMat rho = obj.rho_from(x);
    Eigen::SelfAdjointEigenSolver<CMat> es(rho);
    bool improved = false;
    for (double thresh : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        double tot = 0.0;
        bool truncated = false;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            double e = es.eigenvalues()(i);
            if (e > thresh) tot += e;
            else if (e > 0) truncated = true;
        }
        if (!truncated || tot <= 0) continue;
        CMat filtered = CMat::Zero(obj.dim, obj.dim);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            double e = es.eigenvalues()(i);
            if (e > thresh)
                filtered += (e / tot) * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
        }
        std::vector<double> cand;
        if (!pack_state(obj, filtered, cand)) continue;
        double f = obj(cand);
        if (f < fval) {
            x = cand;
            fval = f;
            improved = true;
        }
    }
    return improved;
}

struct RestartResult {
    double value = kInf;     // clean objective (no penalty)
    double violation = kInf; // worst absolute constraint residual
    bool feasible = false;
    CMat rho;
};

RestartResult solve_one(const Objective& base, int dim, const SolverOptions& opts, int restart) {
    Rng rng(opts.seed, 0x501Eu + static_cast<uint64_t>(restart));
    const int n = base.param_count();
    std::vector<double> x(n);
    // all restarts fan out from the maximally mixed factor with growing noise;
    // the largest amplitudes are effectively unbiased random starts
    double amplitude = 0.05 * std::pow(1.7, restart);
    int k = 0;
    for (int i = 0; i < dim; ++i) {
        x[k++] = 1.0;
        k += 2 * i;
    }
    for (double& v : x) v += amplitude * rng.gauss();

    Objective obj = base;
    obj.weight = opts.penalty_weight;
    size_t n_constraints = base.cs->linear.size() + base.cs->nonlinear.size();
    obj.multipliers.assign(n_constraints, 0.0);
    auto fx = [&obj](const std::vector<double>& v) { return obj(v); };
    double scale = 0.6;
    std::vector<double> residual;
    double prev_norm = kInf;
    for (int round = 0; round < 12; ++round) {
        detail::nelder_mead(fx, x, {scale * (0.5 + rng.uniform())}, opts.max_iters, 1e-12);
        // polish from the same point with a tighter simplex
        double fval = detail::nelder_mead(fx, x, {scale * 0.1}, opts.max_iters / 2, 1e-13);
        if (try_spectral_snap(obj, x, fval))
            detail::nelder_mead(fx, x, {scale * 0.02}, opts.max_iters / 2, 1e-13);
        CMat rho = obj.rho_from(x);
        double worst = 0.0;
        bool ok = obj.feasible(rho, &worst);
        if (ok && round >= 4) break;  // late break: keep sharpening the objective
        obj.residuals(rho, residual);
        double norm = 0.0;
        for (size_t i = 0; i < residual.size(); ++i) {
            obj.multipliers[i] += 2.0 * obj.weight * residual[i];
            norm = std::max(norm, std::abs(residual[i]));
        }
        if (norm > 0.25 * prev_norm && obj.weight < 3e10) obj.weight *= 10.0;
        prev_norm = norm;
        scale *= 0.5;
    }
    // with the multipliers learned, a moderate quadratic weight widens the
    // feasible valley so the final simplex rebuilds can actually walk it
    double stiff_weight = obj.weight;
    obj.weight = std::max(opts.penalty_weight, 1e5);
    double fcur = obj(x);
    try_symmetrize(obj, x, fcur);
    double hop_scale = 0.05;
    for (int rep = 0; rep < 12 && hop_scale > 1e-4; ++rep) {
        std::vector<double> cand = x;
        double fc = detail::nelder_mead(fx, cand, {hop_scale}, opts.max_iters / 2, 1e-15);
        if (fc < fcur - 1e-10) {
            x = cand;
            fcur = fc;
        } else {
            hop_scale *= 0.3;
        }
        try_symmetrize(obj, x, fcur);
    }
    // pull the residuals back inside the tolerances at full stiffness, then
    // sharpen with deterministic coordinate moves
    obj.weight = stiff_weight;
    for (int rep = 0; rep < 3; ++rep) {
        detail::nelder_mead(fx, x, {0.006}, opts.max_iters / 2, 1e-15);
        CMat rho = obj.rho_from(x);
        if (obj.feasible(rho)) break;
        obj.residuals(rho, residual);
        for (size_t i = 0; i < residual.size(); ++i)
            obj.multipliers[i] += 2.0 * obj.weight * residual[i];
    }
    double fbest = obj(x);
    double radius = 0.004;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int sweep = 0; sweep < 6; ++sweep) {
        for (int i = 0; i < n; ++i) {
            double a = x[i] - radius, b = x[i] + radius;
            double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
            auto fat = [&](double v) {
                double keep = x[i];
                x[i] = v;
                double f = obj(x);
                x[i] = keep;
                return f;
            };
            double f1 = fat(x1), f2 = fat(x2);
            while (b - a > 1e-11) {
                if (f1 > f2) {
                    a = x1; x1 = x2; f1 = f2;
                    x2 = a + invphi * (b - a); f2 = fat(x2);
                } else {
                    b = x2; x2 = x1; f2 = f1;
                    x1 = b - invphi * (b - a); f1 = fat(x1);
                }
            }
            double mid = 0.5 * (a + b);
            double fmid = fat(mid);
            if (fmid < fbest) {
                x[i] = mid;
                fbest = fmid;
            }
        }
        radius *= 0.35;
        CMat rho = obj.rho_from(x);
        if (!obj.feasible(rho)) {
            obj.residuals(rho, residual);
            for (size_t i = 0; i < residual.size(); ++i)
                obj.multipliers[i] += 2.0 * obj.weight * residual[i];
            fbest = obj(x);
        }
    }

    RestartResult res;
    res.rho = base.rho_from(x);
    if (std::getenv("ENTFLOOR_DEBUG_RESTARTS")) {
        CMat rr = base.rho_from(x);
        std::fprintf(stderr, "restart %d: EN=%.8f 01=(%.4f,%.4f) 03=(%.4f,%.4f) 12=(%.4f,%.4f) 13=(%.4f,%.4f) d=(%.4f %.4f %.4f %.4f)\n",
            restart, base.log_neg(rr), rr(0,1).real(), rr(0,1).imag(), rr(0,3).real(), rr(0,3).imag(),
            rr(1,2).real(), rr(1,2).imag(), rr(1,3).real(), rr(1,3).imag(),
            rr(0,0).real(), rr(1,1).real(), rr(2,2).real(), rr(3,3).real());
    }
    res.violation = 0.0;
    res.feasible = base.feasible(res.rho, &res.violation);
    res.value = base.log_neg(res.rho);
    return res;
}

}  // namespace

NumericFloor min_entanglement_numeric(const ConstraintSet& cs, int dim, const SolverOptions& opts) {
    if (dim != 4 && dim != 8) throw std::invalid_argument("solver supports dim 4 or 8");
    if (opts.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    int qubits = dim == 4 ? 2 : 3;
    for (const auto& lc : cs.linear)
        if (lc.obs.matrix.rows() != dim)
            throw std::invalid_argument("constraint observable dimension mismatch");
    if (opts.cut.qubit < 0 || opts.cut.qubit >= qubits)
        throw std::invalid_argument("objective cut does not fit the dimension");

    Objective base;
    base.cs = &cs;
    base.dim = dim;
    base.qubits = qubits;
    base.pt_bitmask = 1u << (qubits - 1 - opts.cut.qubit);
    base.weight = opts.penalty_weight;

    std::vector<RestartResult> runs(opts.restarts);
    parallel_for(opts.restarts, opts.exec, [&](std::ptrdiff_t r) {
        runs[r] = solve_one(base, dim, opts, static_cast<int>(r));
    });

    int best = -1, nfeas = 0;
    double lo = kInf, hi = -kInf;
    for (int r = 0; r < opts.restarts; ++r) {
        if (!runs[r].feasible) continue;
        ++nfeas;
        lo = std::min(lo, runs[r].value);
        hi = std::max(hi, runs[r].value);
        if (best < 0 || runs[r].value < runs[best].value) best = r;
    }
    if (best < 0) {
        double closest = kInf;
        for (const auto& run : runs) closest = std::min(closest, run.violation);
        throw InfeasibleError("no start met the constraint tolerances (best residual " +
                              fmt12(closest) + ")");
    }
    double spread = hi - lo;
    if (nfeas >= 2 && spread >= 1e-4)
        throw ConvergenceError("feasible restarts disagree: spread " + fmt12(spread));

    NumericFloor out;
    out.result.value = std::max(0.0, runs[best].value);
    out.result.status = FloorStatus::Exact;
    out.result.witness = DensityMatrix::from_matrix(0.5 * (runs[best].rho + runs[best].rho.adjoint()));
    out.diag.spread = nfeas >= 2 ? spread : 0.0;
    out.diag.max_violation = runs[best].violation;
    out.diag.feasible_restarts = nfeas;
    return out;
}

std::vector<CloudRecord> montecarlo_cloud(const SampleFamily& family, int n, uint64_t seed, Exec exec) {
    if (n < 1) throw std::invalid_argument("montecarlo_cloud: n must be >= 1");
    if (family.qubits != 2) throw std::invalid_argument("montecarlo_cloud samples two-qubit states");
    std::vector<CloudRecord> out(n);
    parallel_for(n, exec, [&](std::ptrdiff_t i) {
        DensityMatrix rho = sample(family, splitmix64(seed) + static_cast<uint64_t>(i));
        CloudRecord& r = out[i];
        r.Q = purity_Q(rho);
        r.P = (4.0 / 3.0) * (r.Q - 0.25);
        r.connected_czz = connected_czz(rho);
        r.E_N = log_negativity(rho);
        r.S = entropy(rho);
        double sa = entropy_of_eigenvalues(hermitian_eigenvalues(partial_trace_to_qubit(rho.matrix(), 2, 0)));
        double sb = entropy_of_eigenvalues(hermitian_eigenvalues(partial_trace_to_qubit(rho.matrix(), 2, 1)));
        r.I = sa + sb - r.S;
    });
    return out;
}

}  // namespace entfloor
