// multipartite.hpp — three-qubit floors on GHZ-diagonal states: the Tri-PPT
// test, random robustness, and the relative-entropy-of-entanglement solver E3.
#pragma once

#include <array>

#include "entfloor/floors.hpp"
#include "entfloor/parallel.hpp"
#include "entfloor/qstate.hpp"

namespace entfloor {

// Eight-parameter GHZ-diagonal state. The 8x8 matrix carries (a,b,c,d) twice
// on the diagonal and (h,g,f,e) on the anti-diagonal; eigenvalue pairs are
// a+-h, b+-g, c+-f, d+-e.
struct GhzDiagonal {
    double a = 0, b = 0, c = 0, d = 0;  // diagonal pairs, each >= 0, 2(a+b+c+d)=1
    double e = 0, f = 0, g = 0, h = 0;  // anti-diagonal couplings, |h|<=a ... |e|<=d

    static GhzDiagonal make(double a, double b, double c, double d,
                            double e, double f, double g, double h);

    DensityMatrix embed() const;          // full 8x8 density matrix
    GhzDiagonal canonical() const;        // same state up to local unitaries, e..h >= 0

    double cxxx() const { return 2.0 * (e + f + g + h); }
    double c1zz() const { return 2.0 * (a - b - c + d); }
    double czz1() const { return 2.0 * (a + b - c - d); }
};

// Deterministic random valid GHZ-diagonal state (property-test helper).
GhzDiagonal random_ghz_diagonal(uint64_t seed);

struct TriData {
    double cxxx = 0, c1zz = 0, czz1 = 0;
};

// Affine family of GHZ-diagonal states matching TriData. The three printed
// correlators leave one diagonal degree of freedom free (the z1z correlator,
// called t here) and fix only the sum of the anti-diagonal couplings.
struct GhzFamily {
    TriData data;
    double t_lo = 0, t_hi = 0;  // feasible interval for t

    std::array<double, 4> diagonal(double t) const;  // {a,b,c,d} entries at t

    // Member with couplings (e,f,g,...) summing to |cxxx|/2; h is implied.
    // Throws InfeasibleError if the couplings violate the positivity caps.
    GhzDiagonal member(double t, double e, double f, double g) const;

    // Balanced member: t maximizing the smallest diagonal entry, couplings
    // spread as evenly as the positivity caps allow.
    GhzDiagonal representative() const;
};

GhzFamily ghz_family_from_data(const TriData& data);

// max{|e|,|f|,|g|,|h|} - min{a,b,c,d}; <= 0 iff the state is PPT across all
// three bipartite cuts.
double tri_ppt_delta(const GhzDiagonal& s);

// Minimal fraction of the maximally mixed state whose admixture makes the
// state Tri-PPT: max(0, delta / (1/8 + delta)).
double random_robustness(const GhzDiagonal& s);

// Closed-form minimal random robustness over all states with the given data.
// The formula is exact whenever min(|C1zz|,|Czz1|) >= 1 - |Cxxx| (the witness
// search confirms attainment); elsewhere it is reported as a lower bound.
FloorResult min_random_robustness(const TriData& data);

// Relative entropy S(sigma || rho*) where rho* is the closed-form optimal
// Tri-PPT state with diagonal pair weights (a_rho, b_rho, c_rho, 1-sum).
// Returns +infinity on support violation.
double e3_inner(const GhzDiagonal& sigma, double a_rho, double b_rho, double c_rho);

// Convex minimization of e3_inner over the compatible sigma family and the
// rho parameters. Multi-start; restarts must agree within tol.
FloorResult min_e3(const TriData& data, double tol = 1e-6, Exec exec = Exec::Serial);

}  // namespace entfloor
