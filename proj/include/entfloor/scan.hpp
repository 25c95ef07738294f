// scan.hpp — grid scans over the floors and the figure presets.
#pragma once

#include <map>

#include "entfloor/io.hpp"
#include "entfloor/multipartite.hpp"
#include "entfloor/solver.hpp"

namespace entfloor {

struct ScanAxis {
    std::string param;
    double from = 0.0, to = 1.0;
    int steps = 2;  // >= 2 grid points unless from == to
};

// floor_kind: xxzz | xyz | purity-czz | mutual-info | local | tri-robustness
// | tri-relent. Axes sweep one or two named parameters; `fixed` supplies the
// rest. Infeasible points produce the literal "infeasible" in value columns.
struct ScanSpec {
    std::string floor_kind;
    std::vector<ScanAxis> axes;
    std::map<std::string, double> fixed;
};

ScanSpec scan_spec_from_json(const nlohmann::json& j);

Table grid_scan(const ScanSpec& spec, Exec exec = Exec::Parallel);

// fig1: mutual-info floor over the (S, I) triangle.
// fig2: purity/correlation regions and floors over (P, Czz).
// fig3: tri-relent at Cxxx = 1 over an 11x11 (C1zz, Czz1) grid.
// fig4: local-statistics floor vs the correlations-only floor at
//       Czz = 0.9, z1 = 0.3, z2 = 0.2, Cxx swept.
Table scan_preset(const std::string& name, Exec exec = Exec::Parallel);

}  // namespace entfloor
