#include "entfloor/floors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace entfloor {

namespace {

void require_range(double v, const char* name) {
    if (!(v >= -1.0 && v <= 1.0))
        throw InfeasibleError(std::string(name) + " = " + fmt12(v) + " outside [-1,1]");
}

CMat conjugate(const CMat& m, const CMat& u) { return u * m * u.adjoint(); }

// Maximizes a unimodal f on [lo, hi] by golden-section search.
double golden_max(double lo, double hi, const std::function<double(double)>& f, double tol = 1e-12) {
    if (hi - lo <= tol) return 0.5 * (lo + hi);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a); f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a); f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

std::string to_string(FloorStatus s) {
    switch (s) {
        case FloorStatus::Exact: return "exact";
        case FloorStatus::ConjecturedExact: return "conjectured-exact";
        case FloorStatus::LowerBound: return "lower-bound";
    }
    return "?";
}

std::string to_string(RegionTag r) {
    switch (r) {
        case RegionTag::InfeasibleI: return "infeasible-I";
        case RegionTag::SeparableS: return "separable-S";
        case RegionTag::EntangledIIa: return "entangled-IIa";
        case RegionTag::EntangledIIb: return "entangled-IIb";
    }
    return "?";
}

FloorResult floor_xx_zz(double cxx, double czz) {
    require_range(cxx, "Cxx");
    require_range(czz, "Czz");
    double ax = std::abs(cxx), az = std::abs(czz);

    // witness in the nonnegative quadrant, then flip back to the input signs
    double b = (1.0 - az) / 4.0;
    double corner = ax / 2.0 - b;
    CMat w = CMat::Zero(4, 4);
    w(0, 0) = w(3, 3) = (1.0 + az) / 4.0;
    w(1, 1) = w(2, 2) = (1.0 - az) / 4.0;
    w(0, 3) = w(3, 0) = corner;
    w(1, 2) = w(2, 1) = b;
    if (cxx < 0) w = conjugate(w, pauli_word_matrix("1z"));  // flips Cxx
    if (czz < 0) w = conjugate(w, pauli_word_matrix("1x"));  // flips Czz

    FloorResult out;
    out.value = log2_plus(ax + az);
    out.status = FloorStatus::Exact;
    out.witness = DensityMatrix::from_matrix(w);
    return out;
}

FloorResult floor_xx_yy_zz(double cxx, double cyy, double czz) {
    require_range(cxx, "Cxx");
    require_range(cyy, "Cyy");
    require_range(czz, "Czz");
    // Bell-basis weights of the unique twirled state with these correlators
    double q[4] = {
        (1.0 + cxx - cyy + czz) / 4.0,
        (1.0 - cxx + cyy + czz) / 4.0,
        (1.0 + cxx + cyy - czz) / 4.0,
        (1.0 - cxx - cyy - czz) / 4.0,
    };
    double qmin = *std::min_element(q, q + 4);
    if (qmin < -kHermitianTol)
        throw InfeasibleError("no state has (Cxx,Cyy,Czz) = (" + fmt12(cxx) + "," + fmt12(cyy) +
                              "," + fmt12(czz) + "): Bell weight " + fmt12(qmin) + " < 0");

    CMat w = 0.25 * (CMat::Identity(4, 4) + cxx * pauli_word_matrix("xx") +
                     cyy * pauli_word_matrix("yy") + czz * pauli_word_matrix("zz"));
    if (qmin < 0) {  // within tolerance of the boundary; project onto it
        CMat fix = CMat::Zero(4, 4);
        double qc[4];
        double tot = 0.0;
        for (int k = 0; k < 4; ++k) tot += (qc[k] = std::max(q[k], 0.0));
        CVec bell[4];
        for (int k = 0; k < 4; ++k) bell[k] = CVec::Zero(4);
        bell[0](0) = bell[0](3) = 1 / std::sqrt(2.0);
        bell[1](0) = 1 / std::sqrt(2.0); bell[1](3) = -1 / std::sqrt(2.0);
        bell[2](1) = bell[2](2) = 1 / std::sqrt(2.0);
        bell[3](1) = 1 / std::sqrt(2.0); bell[3](2) = -1 / std::sqrt(2.0);
        for (int k = 0; k < 4; ++k) fix += (qc[k] / tot) * (bell[k] * bell[k].adjoint());
        w = fix;
    }

    FloorResult out;
    out.value = log2_plus((1.0 + std::abs(cxx) + std::abs(cyy) + std::abs(czz)) / 2.0);
    out.status = FloorStatus::Exact;
    out.witness = DensityMatrix::from_matrix(w);
    return out;
}

RegionTag classify_purity_czz(double p, double czz) {
    if (!(p >= 0.0 && p <= 1.0)) throw InfeasibleError("P = " + fmt12(p) + " outside [0,1]");
    require_range(czz, "Czz");
    double c = std::abs(czz);
    if (p < c * c / 3.0) return RegionTag::InfeasibleI;
    if (p <= 1.0 - 2.0 * c / 3.0) return RegionTag::SeparableS;
    double q = (3.0 * p + 1.0) / 4.0;
    double iia_hi = 0.5 * (1.0 + (1.0 - c / 2.0) * (1.0 - c / 2.0));
    return q <= iia_hi ? RegionTag::EntangledIIa : RegionTag::EntangledIIb;
}

namespace {

// Diagonal two-qubit state with the requested purity and connected Czz;
// exists everywhere in the closure of region S.
DensityMatrix separable_purity_witness(double p, double czz) {
    double c = std::abs(czz);
    double q = (3.0 * p + 1.0) / 4.0;
    double m = std::sqrt(std::max(0.0, q + c / 2.0));
    m = std::clamp(m, (1.0 + c) / 2.0, 1.0);
    double s = std::sqrt(std::max(0.0, 2.0 * m - 1.0 - c));
    double a = (m + s) / 2.0, d = (m - s) / 2.0, b = (1.0 - m) / 2.0;
    CMat w = CMat::Zero(4, 4);
    w(0, 0) = a; w(1, 1) = b; w(2, 2) = b; w(3, 3) = d;
    if (czz < 0) w = conjugate(w, pauli_word_matrix("1x"));
    return DensityMatrix::from_matrix(w);
}

}  // namespace

PurityCzzFloor floor_purity_czz(double p, double czz) {
    RegionTag region = classify_purity_czz(p, czz);
    if (region == RegionTag::InfeasibleI)
        throw InfeasibleError("Region I: no state has P = " + fmt12(p) + ", Czz = " + fmt12(czz));
    double c = std::abs(czz);
    double q = (3.0 * p + 1.0) / 4.0;

    PurityCzzFloor out;
    out.region = region;
    out.proven_lower = log2_plus(q + c / 2.0);
    if (region == RegionTag::SeparableS) {
        out.value = 0.0;
        out.status = FloorStatus::Exact;
        out.witness = separable_purity_witness(p, czz);
        return out;
    }
    double in_a = 1.0 + std::sqrt(std::max(0.0, 2.0 * (q - 1.0) + c));
    double in_b = c + std::sqrt(std::max(0.0, 2.0 * q - 1.0));
    out.value = std::min(std::log2(in_a), std::log2(in_b));
    out.status = FloorStatus::ConjecturedExact;
    return out;
}

FloorResult floor_mutual_info(double i_ab, double s_ab) {
    if (i_ab < 0.0 || s_ab < 0.0 || i_ab + s_ab > 2.0 + 1e-12)
        throw InfeasibleError("(I, S) = (" + fmt12(i_ab) + ", " + fmt12(s_ab) +
                              ") outside the physical triangle I,S >= 0, I+S <= 2");
    double h_marg = 0.5 * (i_ab + s_ab);  // entropy of each reduction

    FloorResult out;
    out.value = std::max(0.0, 0.5 * (i_ab - s_ab));
    out.status = FloorStatus::Exact;

    if (s_ab >= i_ab) {
        // diagonal witness: symmetric (a, b, b, d) with marginal entropy h_marg
        double qm = binary_entropy_inv(h_marg);
        double b_hi = qm * (1.0 - qm);
        auto ent = [&](double b) {
            double pr[4] = {qm - b, b, b, 1.0 - qm - b};
            double h = 0.0;
            for (double x : pr)
                if (x > 0) h -= x * std::log2(x);
            return h;
        };
        // entropy rises from h_marg at b=0 to 2*h_marg at the product point
        double lo = 0.0, hi = b_hi;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (ent(mid) < s_ab) lo = mid; else hi = mid;
        }
        double b = 0.5 * (lo + hi);
        CMat w = CMat::Zero(4, 4);
        w(0, 0) = qm - b; w(1, 1) = b; w(2, 2) = b; w(3, 3) = 1.0 - qm - b;
        out.witness = DensityMatrix::from_matrix(w);
    } else {
        // maximally correlated witness on span{|00>, |11>}
        double a = binary_entropy_inv(h_marg);
        double lam = 1.0 - binary_entropy_inv(s_ab);
        double rad = (lam - 0.5) * (lam - 0.5) - (a - 0.5) * (a - 0.5);
        double b = std::sqrt(std::max(0.0, rad));
        CMat w = CMat::Zero(4, 4);
        w(0, 0) = a; w(3, 3) = 1.0 - a;
        w(0, 3) = w(3, 0) = b;
        out.witness = DensityMatrix::from_matrix(w);
    }
    return out;
}

bool local_stats_feasible(double czz, double cxx, double z1, double z2) {
    require_range(czz, "Czz");
    require_range(cxx, "Cxx");
    require_range(z1, "z1");
    require_range(z2, "z2");
    if (czz > 1.0 - std::abs(z2 - z1)) return false;
    double r1 = (1.0 + czz) * (1.0 + czz) - (z1 + z2) * (z1 + z2);
    double r2 = (1.0 - czz) * (1.0 - czz) - (z1 - z2) * (z1 - z2);
    double cap = 0.5 * std::sqrt(std::max(0.0, r1)) + 0.5 * std::sqrt(std::max(0.0, r2));
    return cxx <= cap + 1e-15;
}

FloorResult floor_local_stats(double czz, double cxx, double z1, double z2) {
    bool flipped = cxx < 0;
    double ax = std::abs(cxx);
    if (!local_stats_feasible(czz, ax, z1, z2))
        throw InfeasibleError("no state has Czz = " + fmt12(czz) + ", Cxx = " + fmt12(cxx) +
                              ", z1 = " + fmt12(z1) + ", z2 = " + fmt12(z2));

    double a = (1.0 + z1 + z2 + czz) / 4.0;
    double b = (1.0 + z1 - z2 - czz) / 4.0;
    double c = (1.0 - z1 + z2 - czz) / 4.0;
    double d = (1.0 - z1 - z2 + czz) / 4.0;
    for (double* v : {&a, &b, &c, &d}) {
        if (*v < -kHermitianTol)
            throw InfeasibleError("diagonal entry " + fmt12(*v) + " < 0 for these local statistics");
        *v = std::max(*v, 0.0);
    }

    double sp = z1 + z2, sm = z1 - z2;
    auto lam_min = [&](double e) {
        double f = ax / 2.0 - e;
        double g1 = 0.25 * (1.0 + czz - std::sqrt(sp * sp + 16.0 * e * e));
        double g2 = 0.25 * (1.0 - czz - std::sqrt(sm * sm + 16.0 * f * f));
        return std::min(g1, g2);
    };
    double e_lo = std::max(0.0, ax / 2.0 - std::sqrt(a * d));
    double e_hi = std::min(ax / 2.0, std::sqrt(b * c));
    if (e_lo > e_hi + 1e-12)
        throw InfeasibleError("empty coherence range for these local statistics");
    e_hi = std::max(e_lo, e_hi);
    double e_star = golden_max(e_lo, e_hi, lam_min);
    double lam = lam_min(e_star);

    CMat w = CMat::Zero(4, 4);
    double f_star = ax / 2.0 - e_star;
    w(0, 0) = a; w(1, 1) = b; w(2, 2) = c; w(3, 3) = d;
    w(0, 3) = w(3, 0) = f_star;
    w(1, 2) = w(2, 1) = e_star;
    if (flipped) w = conjugate(w, pauli_word_matrix("z1"));  // restore the sign of Cxx

    FloorResult out;
    out.value = std::log2(1.0 - 2.0 * std::min(0.0, lam));
    out.status = FloorStatus::Exact;
    out.witness = DensityMatrix::from_matrix(w);
    return out;
}

}  // namespace entfloor
