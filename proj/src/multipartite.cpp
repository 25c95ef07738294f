#include "entfloor/multipartite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "nelder_mead.hpp"
#include <vector>

namespace entfloor {

namespace {

constexpr double kTiny = 1e-15;

double golden_min(double lo, double hi, const std::function<double(double)>& f, double tol = 1e-12) {
    if (hi - lo <= tol) return 0.5 * (lo + hi);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 > f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a); f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a); f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

// Even spread of `total` over four slots with caps: the smallest level M such
// that sum_i min(M, cap_i) = total.
double waterfill_level(std::array<double, 4> caps, double total) {
    std::sort(caps.begin(), caps.end());
    double assigned = 0.0;
    for (int i = 0; i < 4; ++i) {
        int remaining = 4 - i;
        double level = (total - assigned) / remaining;
        if (level <= caps[i] + kTiny) return std::max(level, 0.0);
        assigned += caps[i];
    }
    return caps[3];
}

}  // namespace

GhzDiagonal GhzDiagonal::make(double a, double b, double c, double d,
                              double e, double f, double g, double h) {
    GhzDiagonal s{a, b, c, d, e, f, g, h};
    for (double v : {a, b, c, d})
        if (v < -kHermitianTol) throw std::invalid_argument("GHZ-diagonal entry < 0");
    if (std::abs(2.0 * (a + b + c + d) - 1.0) > 1e-10)
        throw std::invalid_argument("GHZ-diagonal trace differs from 1");
    const double slack = 1e-10;
    if (std::abs(h) > a + slack || std::abs(g) > b + slack ||
        std::abs(f) > c + slack || std::abs(e) > d + slack)
        throw std::invalid_argument("GHZ-diagonal couplings violate positivity");
    return s;
}

DensityMatrix GhzDiagonal::embed() const {
    CMat m = CMat::Zero(8, 8);
    const double diag[8] = {a, b, c, d, d, c, b, a};
    const double anti[8] = {h, g, f, e, e, f, g, h};
    for (int i = 0; i < 8; ++i) {
        m(i, i) = diag[i];
        m(i, 7 - i) = anti[i];
    }
    // clip coupling overshoot from rounding so the PSD check passes
    for (int i = 0; i < 8; ++i) {
        double cap = std::min(m(i, i).real(), m(7 - i, 7 - i).real());
        double v = m(i, 7 - i).real();
        if (std::abs(v) > cap) m(i, 7 - i) = m(7 - i, i) = v > 0 ? cap : -cap;
    }
    double tr = m.trace().real();
    if (tr > 0) m /= tr;
    return DensityMatrix::from_matrix(m);
}

GhzDiagonal GhzDiagonal::canonical() const {
    GhzDiagonal s = *this;
    s.e = std::abs(e); s.f = std::abs(f); s.g = std::abs(g); s.h = std::abs(h);
    return s;
}

GhzDiagonal random_ghz_diagonal(uint64_t seed) {
    Rng rng(seed, 0x6823u);
    double w[4], tot = 0.0;
    for (double& v : w) tot += (v = -std::log(rng.uniform()));
    GhzDiagonal s;
    s.a = 0.5 * w[0] / tot; s.b = 0.5 * w[1] / tot;
    s.c = 0.5 * w[2] / tot; s.d = 0.5 * w[3] / tot;
    s.h = rng.uniform(-s.a, s.a);
    s.g = rng.uniform(-s.b, s.b);
    s.f = rng.uniform(-s.c, s.c);
    s.e = rng.uniform(-s.d, s.d);
    return s;
}

std::array<double, 4> GhzFamily::diagonal(double t) const {
    double x = data.c1zz, y = data.czz1;
    return {(1.0 + y + x + t) / 8.0, (1.0 + y - x - t) / 8.0,
            (1.0 - y - x + t) / 8.0, (1.0 - y + x - t) / 8.0};
}

GhzDiagonal GhzFamily::member(double t, double e, double f, double g) const {
    auto diag = diagonal(t);
    double total = std::abs(data.cxxx) / 2.0;
    double h = total - e - f - g;
    const double slack = 1e-9;
    if (e < -slack || f < -slack || g < -slack || h < -slack ||
        e > diag[3] + slack || f > diag[2] + slack || g > diag[1] + slack || h > diag[0] + slack)
        throw InfeasibleError("GHZ family couplings violate positivity caps");
    GhzDiagonal s;
    s.a = std::max(diag[0], 0.0); s.b = std::max(diag[1], 0.0);
    s.c = std::max(diag[2], 0.0); s.d = std::max(diag[3], 0.0);
    s.e = std::clamp(e, 0.0, s.d); s.f = std::clamp(f, 0.0, s.c);
    s.g = std::clamp(g, 0.0, s.b); s.h = std::clamp(h, 0.0, s.a);
    if (data.cxxx < 0) { s.e = -s.e; s.f = -s.f; s.g = -s.g; s.h = -s.h; }
    return s;
}

GhzDiagonal GhzFamily::representative() const {
    auto neg_min_diag = [&](double t) {
        auto d = diagonal(t);
        return -*std::min_element(d.begin(), d.end());
    };
    double t = golden_min(t_lo, t_hi, neg_min_diag);
    auto diag = diagonal(t);
    double total = std::abs(data.cxxx) / 2.0;
    double level = waterfill_level({diag[3], diag[2], diag[1], diag[0]}, total);
    double e = std::min(level, diag[3]);
    double f = std::min(level, diag[2]);
    double g = std::min(level, diag[1]);
    // rounding residue goes to h inside member()
    return member(t, e, f, g);
}

GhzFamily ghz_family_from_data(const TriData& data) {
    for (double v : {data.cxxx, data.c1zz, data.czz1})
        if (!(v >= -1.0 && v <= 1.0))
            throw InfeasibleError("tripartite correlator outside [-1,1]");
    double x = data.c1zz, y = data.czz1;
    GhzFamily fam;
    fam.data = data;
    fam.t_lo = std::max(-1.0 - x - y, x + y - 1.0);
    fam.t_hi = std::min(1.0 + y - x, 1.0 + x - y);
    if (fam.t_lo > fam.t_hi + 1e-12)
        throw InfeasibleError("no GHZ-diagonal state matches the data");
    fam.t_hi = std::max(fam.t_lo, fam.t_hi);
    return fam;
}

double tri_ppt_delta(const GhzDiagonal& s) {
    double off = std::max({std::abs(s.e), std::abs(s.f), std::abs(s.g), std::abs(s.h)});
    double dia = std::min({s.a, s.b, s.c, s.d});
    return off - dia;
}

double random_robustness(const GhzDiagonal& s) {
    double delta = tri_ppt_delta(s);
    return std::max(0.0, delta / (0.125 + delta));
}

namespace {

// Smallest tri_ppt_delta attainable within the family, plus its argmin member.
std::pair<double, GhzDiagonal> family_min_delta(const GhzFamily& fam) {
    double total = std::abs(fam.data.cxxx) / 2.0;
    auto delta_at = [&](double t) {
        auto d = fam.diagonal(t);
        double level = waterfill_level({d[3], d[2], d[1], d[0]}, total);
        return level - *std::min_element(d.begin(), d.end());
    };
    // fine scan then golden polish around the best bracket
    const int n = 800;
    double best_t = fam.t_lo, best = delta_at(fam.t_lo);
    for (int i = 1; i <= n; ++i) {
        double t = fam.t_lo + (fam.t_hi - fam.t_lo) * i / n;
        double v = delta_at(t);
        if (v < best) { best = v; best_t = t; }
    }
    double step = (fam.t_hi - fam.t_lo) / n;
    double lo = std::max(fam.t_lo, best_t - step), hi = std::min(fam.t_hi, best_t + step);
    double t = golden_min(lo, hi, delta_at);
    if (delta_at(t) > best) t = best_t;

    auto d = fam.diagonal(t);
    double level = waterfill_level({d[3], d[2], d[1], d[0]}, total);
    GhzDiagonal s = fam.member(t, std::min(level, d[3]), std::min(level, d[2]), std::min(level, d[1]));
    return {tri_ppt_delta(s), s};
}

}  // namespace

FloorResult min_random_robustness(const TriData& data) {
    GhzFamily fam = ghz_family_from_data(data);
    double delta_formula = std::max(
        0.0, (std::abs(data.cxxx) - 1.0) / 2.0 + (std::abs(data.czz1) + std::abs(data.c1zz)) / 4.0);
    auto [delta_fam, witness] = family_min_delta(fam);

    FloorResult out;
    out.value = std::max(0.0, delta_formula / (0.125 + delta_formula));
    out.status = (std::max(delta_fam, 0.0) <= std::max(delta_formula, 0.0) + 1e-9)
                     ? FloorStatus::Exact
                     : FloorStatus::LowerBound;
    out.witness = witness.embed();
    return out;
}

namespace {

// KL contribution of one 2x2 block, eigenvalue pairs (p +- dp) vs (q +- dq).
double block_kl(double p, double dp, double q, double dq) {
    double acc = 0.0;
    const double pv[2] = {p + dp, p - dp};
    const double qv[2] = {q + dq, q - dq};
    for (int i = 0; i < 2; ++i) {
        double pi = std::max(pv[i], 0.0);
        double qi = std::max(qv[i], 0.0);
        if (pi <= kTiny) continue;
        if (qi <= kTiny) return kInf;
        acc += pi * std::log2(pi / qi);
    }
    return acc;
}

double ratio_or_zero(double num, double den) { return den > kTiny ? num / den : 0.0; }

}  // namespace

double e3_inner(const GhzDiagonal& sigma, double a_rho, double b_rho, double c_rho) {
    double d_rho = 1.0 - (a_rho + b_rho + c_rho);
    if (a_rho < -kTiny || b_rho < -kTiny || c_rho < -kTiny || d_rho < -1e-12)
        throw std::invalid_argument("e3_inner: rho parameters outside the simplex");
    // pair weights -> matrix entries
    double ar = std::max(a_rho, 0.0) / 2.0;
    double br = std::max(b_rho, 0.0) / 2.0;
    double cr = std::max(c_rho, 0.0) / 2.0;
    double dr = std::max(d_rho, 0.0) / 2.0;
    double mr = std::min({ar, br, cr, dr});
    double hr = std::clamp(ratio_or_zero(sigma.h, sigma.a) * ar, -mr, mr);
    double gr = std::clamp(ratio_or_zero(sigma.g, sigma.b) * br, -mr, mr);
    double fr = std::clamp(ratio_or_zero(sigma.f, sigma.c) * cr, -mr, mr);
    double er = std::clamp(ratio_or_zero(sigma.e, sigma.d) * dr, -mr, mr);

    double acc = 0.0;
    acc += block_kl(sigma.a, sigma.h, ar, hr);
    acc += block_kl(sigma.b, sigma.g, br, gr);
    acc += block_kl(sigma.c, sigma.f, cr, fr);
    acc += block_kl(sigma.d, sigma.e, dr, er);
    if (std::isinf(acc)) return kInf;
    return std::max(0.0, acc);
}

namespace {

// --- exact inner minimization over Tri-PPT rho -------------------------------
//
// sigma and every rho of the same sparsity pattern commute, so S(sigma||rho)
// is a classical relative entropy over the eight block eigenvalues. Writing
// rho through pair sums w_j and differences d_j, the Tri-PPT set becomes
// w in simplex, |d_j| <= m := min_k w_k. For fixed m the optimal d_j is a
// clamped ratio and the optimal w is a smooth water-fill over a Lagrange
// multiplier; the value is convex in m, leaving one-dimensional searches all
// the way down.

struct SigmaBlock {
    double sp = 0, sm = 0;  // sigma block eigenvalues, sp + sm = block weight
};

std::array<SigmaBlock, 4> sigma_blocks(const GhzDiagonal& s) {
    auto mk = [](double diag, double off) {
        return SigmaBlock{std::max(diag + off, 0.0), std::max(diag - off, 0.0)};
    };
    return {mk(s.a, s.h), mk(s.b, s.g), mk(s.c, s.f), mk(s.d, s.e)};
}

// optimal coupling difference for pair sum w under |d| <= m
double clamped_diff(const SigmaBlock& b, double w, double m) {
    double tot = b.sp + b.sm;
    if (tot <= kTiny) return 0.0;
    double ideal = w * (b.sp - b.sm) / tot;
    return std::clamp(ideal, -m, m);
}

// block KL in bits, 0 log 0 := 0, +inf on support violation
double block_value(const SigmaBlock& b, double w, double m) {
    double d = clamped_diff(b, w, m);
    double pp = std::max((w + d) / 2.0, 0.0), pm = std::max((w - d) / 2.0, 0.0);
    double acc = 0.0;
    if (b.sp > kTiny) {
        if (pp <= kTiny) return kInf;
        acc += b.sp * std::log2(b.sp / pp);
    }
    if (b.sm > kTiny) {
        if (pm <= kTiny) return kInf;
        acc += b.sm * std::log2(b.sm / pm);
    }
    return acc;
}

// pair sum chosen by the multiplier: argmin_w block_value + lambda * w, w >= m
double block_pair_sum(const SigmaBlock& b, double m, double lambda) {
    double tot = b.sp + b.sm;
    if (tot <= kTiny) return m;  // zero-weight blocks surrender their mass
    // interior branch: d = w * r with |w r| <= m
    double r = (b.sp - b.sm) / tot;
    double w_int = tot / (lambda * M_LN2);  // d/dw of -sp log2(w(1+r)/2) - sm log2(w(1-r)/2)
    if (std::abs(w_int * r) <= m + kTiny) return std::max(w_int, m);
    // clamped branch: d = sign(r) * m fixed
    double d = r > 0 ? m : -m;
    double lam = lambda * M_LN2;
    double disc = tot * tot - 4.0 * lam * (d * (b.sp - b.sm) - lam * d * d);
    double w_cl = (tot + std::sqrt(std::max(disc, 0.0))) / (2.0 * lam);
    return std::max(w_cl, m);
}

double inner_value_for_m(const std::array<SigmaBlock, 4>& blocks, double m) {
    // bisect the multiplier so the pair sums fill the simplex
    double lo = 1e-6, hi = 1e6;
    for (int it = 0; it < 64; ++it) {
        double lambda = std::sqrt(lo * hi);
        double sum = 0.0;
        for (const auto& b : blocks) sum += block_pair_sum(b, m, lambda);
        if (sum > 1.0) lo = lambda;
        else hi = lambda;
    }
    double lambda = std::sqrt(lo * hi);
    double acc = 0.0;
    for (int j = 0; j < 4; ++j) acc += block_value(blocks[j], block_pair_sum(blocks[j], m, lambda), m);
    return acc;
}

// min over Tri-PPT rho of S(sigma||rho), bits
double e3_inner_opt(const GhzDiagonal& sigma) {
    auto blocks = sigma_blocks(sigma);
    auto value = [&](double m) { return inner_value_for_m(blocks, m); };
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0, b = 0.25;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = value(x1), f2 = value(x2);
    while (b - a > 1e-11) {
        if (f1 > f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a); f2 = value(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a); f1 = value(x1);
        }
    }
    double best = std::min({value(0.5 * (a + b)), value(0.0), value(0.25)});
    return std::max(0.0, best);
}

// --- outer minimization over the compatible sigma family -----------------------
//
// Coordinates: t plus three slack fractions selecting the coupling split
// through a sequential box rule, so the whole search box maps to feasible
// states and no coordinate move strands on a positivity cap.

struct E3Point {
    double t, se, sf, sg;
};

struct E3Problem {
    GhzFamily fam;
    double total;  // |cxxx| / 2

    // (e, f, g, h) with e+f+g+h = total, 0 <= e <= d(t), ..., h <= a(t)
    std::array<double, 4> split_at(const E3Point& p, const std::array<double, 4>& d) const {
        double cap_e = d[3], cap_f = d[2], cap_g = d[1], cap_h = d[0];
        double rest = total;
        double lo = std::max(0.0, rest - cap_f - cap_g - cap_h);
        double hi = std::min(cap_e, rest);
        double e = lo + p.se * std::max(0.0, hi - lo);
        rest -= e;
        lo = std::max(0.0, rest - cap_g - cap_h);
        hi = std::min(cap_f, rest);
        double f = lo + p.sf * std::max(0.0, hi - lo);
        rest -= f;
        lo = std::max(0.0, rest - cap_h);
        hi = std::min(cap_g, rest);
        double g = lo + p.sg * std::max(0.0, hi - lo);
        double h = rest - g;
        return {e, f, g, h};
    }

    GhzDiagonal sigma_at(const E3Point& p) const {
        auto d = fam.diagonal(p.t);
        auto split = split_at(p, d);
        GhzDiagonal s;
        s.a = std::max(d[0], 0.0);
        s.b = std::max(d[1], 0.0);
        s.c = std::max(d[2], 0.0);
        s.d = std::max(d[3], 0.0);
        s.e = std::clamp(split[0], 0.0, s.d);
        s.f = std::clamp(split[1], 0.0, s.c);
        s.g = std::clamp(split[2], 0.0, s.b);
        s.h = std::clamp(split[3], 0.0, s.a);
        return s;
    }

    double eval(const E3Point& p) const {
        if (p.t < fam.t_lo - 1e-12 || p.t > fam.t_hi + 1e-12) return kInf;
        if (p.se < 0 || p.se > 1 || p.sf < 0 || p.sf > 1 || p.sg < 0 || p.sg > 1) return kInf;
        return e3_inner_opt(sigma_at(p));
    }

    std::pair<double, double> interval(int k) const {
        if (k == 0) return {fam.t_lo, fam.t_hi};
        return {0.0, 1.0};
    }
};

double& coord(E3Point& p, int k) {
    switch (k) {
        case 0: return p.t;
        case 1: return p.se;
        case 2: return p.sf;
        default: return p.sg;
    }
}

// A slack fraction is inert when the box rule leaves it no range anywhere
// (the caps force the whole split, as at |cxxx| = 1).
std::array<bool, 4> active_coords(const E3Problem& prob) {
    std::array<bool, 4> active{true, false, false, false};
    if (prob.fam.t_hi - prob.fam.t_lo < 1e-13) active[0] = false;
    for (double frac : {0.0, 0.35, 0.7, 1.0}) {
        double t = prob.fam.t_lo + frac * (prob.fam.t_hi - prob.fam.t_lo);
        auto d = prob.fam.diagonal(t);
        E3Point pl{t, 0.0, 0.0, 0.0}, ph{t, 1.0, 1.0, 1.0};
        auto low = prob.split_at(pl, d), high = prob.split_at(ph, d);
        for (int k = 0; k < 3; ++k)
            if (std::abs(high[k] - low[k]) > 1e-12) active[k + 1] = true;
    }
    return active;
}

double solve_restart(const E3Problem& prob, const std::array<bool, 4>& active, uint64_t seed,
                     E3Point& point) {
    Rng rng(seed, 0xE311u);
    const GhzFamily& fam = prob.fam;

    E3Point p;
    p.t = seed == 0 ? std::clamp(0.0, fam.t_lo, fam.t_hi) : rng.uniform(fam.t_lo, fam.t_hi);
    p.se = rng.uniform();
    p.sf = rng.uniform();
    p.sg = rng.uniform();
    double val = prob.eval(p);

    auto line_search = [&](int k) {
        if (!active[k]) return;
        auto [lo, hi] = prob.interval(k);
        E3Point q = p;
        auto f1 = [&](double v) {
            coord(q, k) = v;
            return prob.eval(q);
        };
        double x = golden_min(lo, hi, f1, 1e-12);
        double v = f1(x);
        if (v < val) {
            coord(p, k) = x;
            val = v;
        }
    };
    for (int round = 0; round < 30; ++round) {
        double before = val;
        for (int k = 0; k < 4; ++k) line_search(k);
        if (before - val < 1e-13 * (1.0 + std::abs(val))) break;
    }
    // simplex polish over the active coordinates jointly
    std::vector<int> dims;
    for (int k = 0; k < 4; ++k)
        if (active[k]) dims.push_back(k);
    if (dims.size() >= 2) {
        auto fv = [&](const std::vector<double>& v) {
            E3Point q = p;
            for (size_t i = 0; i < dims.size(); ++i) coord(q, dims[i]) = v[i];
            return prob.eval(q);
        };
        std::vector<double> x, step;
        for (int k : dims) {
            x.push_back(coord(p, k));
            step.push_back(k == 0 ? 0.1 * (fam.t_hi - fam.t_lo) : 0.15);
        }
        double v = detail::nelder_mead(fv, x, step, 800, 1e-14);
        if (v < val) {
            val = v;
            for (size_t i = 0; i < dims.size(); ++i) coord(p, dims[i]) = x[i];
            for (int k = 0; k < 4; ++k) line_search(k);
        }
    }
    point = p;
    return val;
}

}  // namespace

FloorResult min_e3(const TriData& data, double tol, Exec exec) {
    if (!(tol > 0)) throw std::invalid_argument("min_e3: tol must be positive");
    TriData folded = data;
    folded.cxxx = std::abs(data.cxxx);
    E3Problem prob{ghz_family_from_data(folded), folded.cxxx / 2.0};

    constexpr int kRestarts = 8;
    std::array<bool, 4> active = active_coords(prob);
    std::vector<double> vals(kRestarts, kInf);
    std::vector<E3Point> points(kRestarts);
    parallel_for(kRestarts, exec, [&](std::ptrdiff_t r) {
        vals[r] = solve_restart(prob, active, static_cast<uint64_t>(r), points[r]);
    });

    int best = 0;
    for (int r = 1; r < kRestarts; ++r)
        if (vals[r] < vals[best]) best = r;
    double spread = *std::max_element(vals.begin(), vals.end()) - vals[best];
    if (!(spread <= std::max(tol, 1e-9)))
        throw ConvergenceError("min_e3 restarts disagree by " + fmt12(spread));

    GhzDiagonal s = prob.sigma_at(points[best]);
    if (data.cxxx < 0) { s.e = -s.e; s.f = -s.f; s.g = -s.g; s.h = -s.h; }

    FloorResult out;
    out.value = std::max(0.0, vals[best]);
    out.status = FloorStatus::Exact;
    out.witness = s.embed();
    return out;
}

}  // namespace entfloor
