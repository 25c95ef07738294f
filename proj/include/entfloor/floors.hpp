// floors.hpp — closed-form minimal-entanglement floors for two qubits:
// correlation-only floors, purity/correlation region classification,
// the mutual-information floor and the local-statistics refinement.
#pragma once

#include <optional>
#include <string>

#include "entfloor/qstate.hpp"

namespace entfloor {

enum class FloorStatus { Exact, ConjecturedExact, LowerBound };

std::string to_string(FloorStatus s);

enum class RegionTag { InfeasibleI, SeparableS, EntangledIIa, EntangledIIb };

std::string to_string(RegionTag r);

struct FloorResult {
    double value = 0.0;  // bits
    FloorStatus status = FloorStatus::Exact;
    std::optional<DensityMatrix> witness;
    std::optional<RegionTag> region;
};

// Floor from the raw correlators Cxx, Czz. Exact, with a witness of the
// zz-symmetric sparse form that attains it.
FloorResult floor_xx_zz(double cxx, double czz);

// Floor from three raw correlators. Rejects triples no state can produce
// (a Bell-diagonal eigenvalue pattern goes negative).
FloorResult floor_xx_yy_zz(double cxx, double cyy, double czz);

// Region of the (purity P, connected Czz) plane. Boundary ties classify
// into S. Negative Czz is folded to |Czz|.
RegionTag classify_purity_czz(double p, double czz);

struct PurityCzzFloor {
    RegionTag region = RegionTag::SeparableS;
    double value = 0.0;                      // 0 in S; region formula in IIa/IIb
    FloorStatus status = FloorStatus::Exact; // ConjecturedExact in IIa/IIb
    double proven_lower = 0.0;               // log2+(Q + Czz/2), always valid
    std::optional<DensityMatrix> witness;    // separable witness inside S
};

// Floor from (purity P, connected Czz). Reports both the conjectured-exact
// region value and the proven lower bound. Throws InfeasibleError in region I.
PurityCzzFloor floor_purity_czz(double p, double czz);

// Floor from quantum mutual information I and global entropy S, both in bits.
// Exact; the witness is diagonal when S >= I and maximally correlated else.
FloorResult floor_mutual_info(double i_ab, double s_ab);

// Whether (Czz, Cxx, z1, z2) raw data admit a state of the zz-symmetric form.
bool local_stats_feasible(double czz, double cxx, double z1, double z2);

// Floor from raw Czz, Cxx plus the local z-means z1, z2. Exact; reduces to
// floor_xx_zz when z1 = z2 = 0.
FloorResult floor_local_stats(double czz, double cxx, double z1, double z2);

}  // namespace entfloor
