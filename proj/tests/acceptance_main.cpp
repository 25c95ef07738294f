// acceptance_main — end-to-end acceptance suite. Runs every criterion at its
// stated tolerance and prints one pass/fail line each. Usage:
//   entfloor_acceptance [--cli PATH_TO_CLI]
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "e3_oracle.hpp"
#include "entfloor/dual.hpp"
#include "entfloor/multipartite.hpp"
#include "entfloor/scan.hpp"
#include "entfloor/solver.hpp"
#include "proc.hpp"

using namespace entfloor;

namespace {

std::string g_cli_path;

struct Criterion {
    std::string name;
    double time_limit_s;
    std::function<bool(std::string&)> run;
};

bool close_to(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// ---- 1: closed-form exactness ------------------------------------------------

bool crit_closed_forms(std::string& msg) {
    bool ok = true;
    double v1 = floor_xx_zz(1.0, 1.0).value;
    double v2 = floor_xx_yy_zz(-1.0, -1.0, -1.0).value;
    double v3 = min_random_robustness({1.0, 1.0, 1.0}).value;
    ok &= close_to(v1, 1.0, 1e-12);
    ok &= close_to(v2, 1.0, 1e-12);
    ok &= close_to(v3, 0.8, 1e-12);
    msg = "floor_xx_zz(1,1)=" + fmt12(v1) + " floor_xx_yy_zz(-1,-1,-1)=" + fmt12(v2) +
          " min_random_robustness(1,1,1)=" + fmt12(v3);
    return ok;
}

// ---- 2: oracle equivalence ------------------------------------------------------

bool crit_oracle_equivalence(std::string& msg) {
    SolverOptions opts;
    opts.exec = Exec::Serial;  // grid level parallelism below
    double worst_xxzz = 0.0, worst_xyz = 0.0, worst_local = 0.0;
    bool ok = true;

    {
        const int n = 10;
        std::vector<double> err(n * n, 0.0);
        parallel_for(n * n, Exec::Parallel, [&](std::ptrdiff_t idx) {
            double cxx = (idx / n) / double(n - 1), czz = (idx % n) / double(n - 1);
            ConstraintSet cs;
            cs.pauli("xx", cxx).pauli("zz", czz);
            NumericFloor r = min_entanglement_numeric(cs, 4, opts);
            err[idx] = std::abs(r.result.value - floor_xx_zz(cxx, czz).value);
        });
        for (double e : err) worst_xxzz = std::max(worst_xxzz, e);
        ok &= worst_xxzz <= 1e-3;
    }

    {
        // 20 random feasible triples
        std::vector<std::array<double, 3>> triples;
        Rng rng(2024, 0xACC);
        while (triples.size() < 20) {
            double cxx = rng.uniform(-1, 1), cyy = rng.uniform(-1, 1), czz = rng.uniform(-1, 1);
            double q_min = std::min({(1 + cxx - cyy + czz), (1 - cxx + cyy + czz),
                                     (1 + cxx + cyy - czz), (1 - cxx - cyy - czz)});
            if (q_min < 0.02) continue;  // keep a positivity margin
            triples.push_back({cxx, cyy, czz});
        }
        std::vector<double> err(triples.size(), 0.0);
        parallel_for(static_cast<std::ptrdiff_t>(triples.size()), Exec::Parallel, [&](std::ptrdiff_t i) {
            auto [cxx, cyy, czz] = triples[i];
            ConstraintSet cs;
            cs.pauli("xx", cxx).pauli("yy", cyy).pauli("zz", czz);
            NumericFloor r = min_entanglement_numeric(cs, 4, opts);
            err[i] = std::abs(r.result.value - floor_xx_yy_zz(cxx, cyy, czz).value);
        });
        for (double e : err) worst_xyz = std::max(worst_xyz, e);
        ok &= worst_xyz <= 1e-3;
    }

    {
        const double czz = 0.9, z1 = 0.3, z2 = 0.2;
        std::vector<double> cxxs;
        for (int k = 0; k < 10; ++k) {
            double cxx = 0.05 + k * 0.09;
            if (local_stats_feasible(czz, cxx, z1, z2)) cxxs.push_back(cxx);
        }
        std::vector<double> err(cxxs.size(), 0.0);
        parallel_for(static_cast<std::ptrdiff_t>(cxxs.size()), Exec::Parallel, [&](std::ptrdiff_t i) {
            ConstraintSet cs;
            cs.pauli("xx", cxxs[i]).pauli("zz", czz).pauli("z1", z1).pauli("1z", z2);
            NumericFloor r = min_entanglement_numeric(cs, 4, opts);
            err[i] = std::abs(r.result.value - floor_local_stats(czz, cxxs[i], z1, z2).value);
        });
        for (double e : err) worst_local = std::max(worst_local, e);
        ok &= cxxs.size() == 10 && worst_local <= 2e-3;
    }

    msg = "max |numeric-closed|: xxzz " + fmt12(worst_xxzz) + ", xyz " + fmt12(worst_xyz) +
          ", local " + fmt12(worst_local);
    return ok;
}

// ---- 3: conjectured purity/correlation bounds ---------------------------------

bool crit_conjectured_regions(std::string& msg) {
    struct Point {
        double q, czz;
        RegionTag region;
    };
    std::vector<Point> pts;
    for (double czz : {0.75, 0.85, 0.95}) {
        double qa_lo = 1.0 - czz / 2.0;
        double qa_hi = 0.5 * (1.0 + (1.0 - czz / 2.0) * (1.0 - czz / 2.0));
        for (double f : {0.25, 0.5, 0.75, 0.9})
            pts.push_back({qa_lo + f * (qa_hi - qa_lo), czz, RegionTag::EntangledIIa});
        for (double f : {0.2, 0.45, 0.7, 0.95})
            pts.push_back({qa_hi + f * (1.0 - qa_hi), czz, RegionTag::EntangledIIb});
    }

    SolverOptions opts;
    opts.exec = Exec::Serial;
    std::vector<double> err(pts.size(), 0.0);
    std::vector<int> region_ok(pts.size(), 0);
    parallel_for(static_cast<std::ptrdiff_t>(pts.size()), Exec::Parallel, [&](std::ptrdiff_t i) {
        double q = pts[i].q, czz = pts[i].czz;
        double p = (4.0 * q - 1.0) / 3.0;
        region_ok[i] = classify_purity_czz(p, czz) == pts[i].region;
        ConstraintSet cs;
        cs.functional(Functional::ConnectedCzz, czz).functional(Functional::PurityQ, q);
        NumericFloor r = min_entanglement_numeric(cs, 4, opts);
        err[i] = std::abs(r.result.value - floor_purity_czz(p, czz).value);
    });

    bool ok = true;
    int iia = 0, iib = 0;
    double worst = 0.0;
    std::string findings;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (!region_ok[i]) ok = false;
        (pts[i].region == RegionTag::EntangledIIa ? iia : iib) += 1;
        worst = std::max(worst, err[i]);
        if (err[i] > 5e-3) {
            ok = false;
            findings += " FINDING: (Q=" + fmt12(pts[i].q) + ",Czz=" + fmt12(pts[i].czz) +
                        ") deviates by " + fmt12(err[i]) + ";";
        }
    }
    ok &= iia >= 10 && iib >= 10;
    msg = std::to_string(iia) + " IIa + " + std::to_string(iib) +
          " IIb points, max |numeric-formula| = " + fmt12(worst) + findings;
    return ok;
}

// ---- 4: separability inequality --------------------------------------------------

bool crit_th1(std::string& msg) {
    const int n = 100000;
    auto records = montecarlo_cloud(SampleFamily{SampleKind::SeparableMixture, 2, 16}, n, 11);
    long bad = 0;
    for (const auto& r : records)
        if (r.Q + 0.5 * r.connected_czz > 1.0 + 1e-12) ++bad;
    msg = "violations: " + std::to_string(bad) + " / " + std::to_string(n);
    return bad == 0;
}

// ---- 5: universal boundary-I and lower-bound properties ---------------------------

bool crit_universal(std::string& msg) {
    const int n = 100000;
    auto records = montecarlo_cloud(SampleFamily{SampleKind::HilbertSchmidtMixed, 2, 16}, n, 12);
    long bad_boundary = 0, bad_lower = 0;
    for (const auto& r : records) {
        if (r.P < r.connected_czz * r.connected_czz / 3.0 - 1e-12) ++bad_boundary;
        if (r.E_N < log2_plus(r.Q + 0.5 * r.connected_czz) - 1e-9) ++bad_lower;
    }
    msg = "boundary-I violations: " + std::to_string(bad_boundary) +
          " / elower violations: " + std::to_string(bad_lower) + " (n = " + std::to_string(n) + ")";
    return bad_boundary == 0 && bad_lower == 0;
}

// ---- 6: certificate suite ------------------------------------------------------------

bool crit_certificates(std::string& msg) {
    bool ok = true;
    std::string detail;
    for (const std::string name : {"xxzz", "xyz", "purity"}) {
        CertificateReport rep = verify_certificate(builtin_certificate(name));
        ok &= std::abs(rep.operator_norm - 1.0) <= 1e-9 && rep.min_eig_slack >= -1e-10 && rep.valid;
        detail += name + "(norm " + fmt12(rep.operator_norm) + ", slack " + fmt12(rep.min_eig_slack) + ") ";
    }
    CertificateReport xyz = verify_certificate(xyz_certificate());
    ok &= std::abs(xyz.min_eig_slack) <= 1e-10;

    DualCertificate zz = xxzz_certificate();
    DualCertificate xyzc = xyz_certificate();
    double worst = 0.0;
    for (int k = 0; k <= 20; ++k) {
        double cxx = k / 20.0, czz = 1.0 - k / 40.0;
        worst = std::max(worst, std::abs(bound_from_certificate(zz, {1.0, cxx, czz}) -
                                         log2_plus(cxx + czz)));
        double c = k / 20.0;
        worst = std::max(worst, std::abs(bound_from_certificate(xyzc, {1.0, -c, -c, -c}) -
                                         log2_plus((1.0 + 3.0 * c) / 2.0)));
    }
    ok &= worst <= 1e-12;
    msg = detail + "max grid deviation " + fmt12(worst);
    return ok;
}

// ---- 7: fig4 reproduction through the CLI ----------------------------------------------

bool crit_fig4(std::string& msg) {
    if (g_cli_path.empty()) {
        msg = "CLI path not supplied (--cli)";
        return false;
    }
    proc::Result res = proc::run("'" + g_cli_path + "' scan --preset fig4");
    if (res.exit_code != 0) {
        msg = "CLI exited with " + std::to_string(res.exit_code);
        return false;
    }
    std::istringstream in(res.out);
    std::string line;
    std::getline(in, line);
    if (line != "cxx,with_locals,correlations_only") {
        msg = "unexpected header '" + line + "'";
        return false;
    }
    bool ok = true;
    int rows = 0, compared = 0;
    bool value_checked = false;
    double value_at_02 = 0.0;
    while (std::getline(in, line)) {
        ++rows;
        std::stringstream ss(line);
        std::string cxx_s, upper_s, lower_s;
        std::getline(ss, cxx_s, ',');
        std::getline(ss, upper_s, ',');
        std::getline(ss, lower_s, ',');
        if (upper_s == "infeasible" || lower_s == "infeasible") continue;
        double cxx = std::stod(cxx_s), upper = std::stod(upper_s), lower = std::stod(lower_s);
        ok &= upper >= lower - 1e-12;
        ++compared;
        if (std::abs(cxx - 0.2) < 1e-12) {
            value_checked = true;
            value_at_02 = upper;
            double expected = std::log2(1.0 - 0.5 * (0.1 - std::sqrt(0.17)));
            ok &= close_to(upper, expected, 1e-6);
        }
    }
    ok &= rows == 21 && compared >= 15 && value_checked;
    msg = std::to_string(rows) + " rows, " + std::to_string(compared) +
          " feasible comparisons, floor(0.2) = " + fmt12(value_at_02);
    return ok;
}

// ---- 8: fig3 reproduction -------------------------------------------------------------

bool crit_fig3(std::string& msg) {
    const int n = 11;
    std::vector<double> grid(n * n, 0.0);
    parallel_for(n * n, Exec::Parallel, [&](std::ptrdiff_t idx) {
        double x = -1.0 + 0.2 * (idx / n), y = -1.0 + 0.2 * (idx % n);
        grid[idx] = min_e3({1.0, x, y}, 1e-7, Exec::Serial).value;
    });
    auto at = [&](int i, int k) { return grid[i * n + k]; };

    bool ok = true;
    const double slack = 1e-5;
    // zero at the centre
    ok &= at(5, 5) <= 1e-6;
    // nondecreasing outward along both axes
    for (int k = 0; k < n; ++k) {
        for (int i = 5; i + 1 < n; ++i) ok &= at(i + 1, k) >= at(i, k) - slack;
        for (int i = 5; i > 0; --i) ok &= at(i - 1, k) >= at(i, k) - slack;
    }
    for (int i = 0; i < n; ++i) {
        for (int k = 5; k + 1 < n; ++k) ok &= at(i, k + 1) >= at(i, k) - slack;
        for (int k = 5; k > 0; --k) ok &= at(i, k - 1) >= at(i, k) - slack;
    }

    // spot checks against the grid-refinement oracle
    struct Spot { double x, y; };
    double worst = 0.0;
    for (Spot s : {Spot{0.0, 0.0}, Spot{1.0, 1.0}, Spot{0.6, 0.2}, Spot{-0.4, 0.8}, Spot{0.8, -0.6}}) {
        double solver = min_e3({1.0, s.x, s.y}, 1e-7).value;
        double grid_val = e3oracle::oracle_min_e3_cxxx1(s.x, s.y);
        worst = std::max(worst, std::abs(solver - grid_val));
    }
    ok &= worst <= 1e-3;
    msg = "centre " + fmt12(at(5, 5)) + ", GHZ corner " + fmt12(at(10, 10)) +
          ", max oracle deviation " + fmt12(worst);
    return ok;
}

// ---- 9: mutual information floor --------------------------------------------------------

bool crit_mutual_info(std::string& msg) {
    bool ok = true;
    ok &= floor_mutual_info(2.0, 0.0).value == 1.0;
    ok &= floor_mutual_info(1.0, 1.0).value == 0.0;
    FloorResult r = floor_mutual_info(1.5, 0.5);
    if (!r.witness) {
        msg = "missing witness";
        return false;
    }
    double sa = entropy_of_eigenvalues(
        hermitian_eigenvalues(partial_trace_to_qubit(r.witness->matrix(), 2, 0)));
    double gap = sa - entropy(*r.witness);
    ok &= close_to(gap, 0.5, 1e-9);
    msg = "floor(2,0)=" + fmt12(floor_mutual_info(2.0, 0.0).value) + ", floor(1,1)=" +
          fmt12(floor_mutual_info(1.0, 1.0).value) + ", witness S(A)-S(AB)=" + fmt12(gap);
    return ok;
}

// ---- 10: twirl properties ---------------------------------------------------------------

bool crit_twirls(std::string& msg) {
    const int n = 10000;
    double worst_czz = 0.0, worst_purity = 0.0, worst_corr = 0.0;
    std::vector<double> wc(n), wp(n), wco(n);
    parallel_for(n, Exec::Parallel, [&](std::ptrdiff_t s) {
        auto rho = sample(SampleFamily{SampleKind::HilbertSchmidtMixed, 2, 16},
                          static_cast<uint64_t>(s) + 77000);
        auto pinched = twirl(rho, TwirlMode::ZzPinch);
        wc[s] = std::abs(connected_czz(pinched) - connected_czz(rho));
        wp[s] = purity_Q(pinched) - purity_Q(rho);
        auto twirled = twirl(rho, TwirlMode::BellTwirl);
        wco[s] = std::max(std::abs(correlation(twirled, "xx") - correlation(rho, "xx")),
                          std::abs(correlation(twirled, "zz") - correlation(rho, "zz")));
    });
    for (int s = 0; s < n; ++s) {
        worst_czz = std::max(worst_czz, wc[s]);
        worst_purity = std::max(worst_purity, wp[s]);
        worst_corr = std::max(worst_corr, wco[s]);
    }
    bool ok = worst_czz <= 1e-12 && worst_purity <= 1e-12 && worst_corr <= 1e-12;
    msg = "max |dCzz| " + fmt12(worst_czz) + ", max purity gain " + fmt12(worst_purity) +
          ", max |dC| " + fmt12(worst_corr);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") g_cli_path = argv[i + 1];

    std::vector<Criterion> criteria = {
        {"closed-form exactness", 1.0, crit_closed_forms},
        {"oracle equivalence", 600.0, crit_oracle_equivalence},
        {"conjectured purity-czz bounds", 900.0, crit_conjectured_regions},
        {"separability inequality, 1e5 samples", 120.0, crit_th1},
        {"universal boundary and lower bound, 1e5 samples", 300.0, crit_universal},
        {"certificate suite", 10.0, crit_certificates},
        {"fig4 reproduction via CLI", 60.0, crit_fig4},
        {"fig3 reproduction", 1200.0, crit_fig3},
        {"mutual-information floor", 10.0, crit_mutual_info},
        {"twirl properties, 1e4 samples", 60.0, crit_twirls},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        std::string msg;
        bool ok = false;
        try {
            ok = criteria[i].run(msg);
        } catch (const std::exception& e) {
            msg = std::string("exception: ") + e.what();
        }
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (elapsed > criteria[i].time_limit_s) {
            ok = false;
            msg += " [exceeded " + fmt12(criteria[i].time_limit_s) + " s limit]";
        }
        if (!ok) ++failures;
        std::printf("[%2zu/10] %s  %s  (%.1f s)  %s\n", i + 1, ok ? "PASS" : "FAIL",
                    criteria[i].name.c_str(), elapsed, msg.c_str());
        std::fflush(stdout);
    }
    std::printf("ACCEPTANCE: %d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
