// entfloor — command-line front door: evaluate floors, verify certificates,
// run Monte-Carlo property suites and grid scans.
//
// Exit codes: 0 success, 2 infeasible inputs, 1 solver non-convergence,
// 64 usage errors.
#include <cstdio>
#include <iostream>
#include <locale>
#include <sstream>

#include <CLI11.hpp>

#include "entfloor/dual.hpp"
#include "entfloor/floors.hpp"
#include "entfloor/io.hpp"
#include "entfloor/multipartite.hpp"
#include "entfloor/scan.hpp"
#include "entfloor/solver.hpp"

using namespace entfloor;
using nlohmann::json;

namespace {

struct Options {
    bool as_json = false;
};

void emit(const Options& opt, const json& doc, const std::string& text) {
    if (opt.as_json) std::cout << doc.dump(2) << "\n";
    else std::cout << text;
}

std::string kv(const std::string& key, const std::string& value) { return key + ": " + value + "\n"; }
std::string kv(const std::string& key, double value) { return kv(key, fmt12(value)); }

json floor_json(const std::string& kind, const json& inputs, const FloorResult& r) {
    json doc{{"verb", "floor"}, {"kind", kind}, {"inputs", inputs},
             {"value", r.value}, {"status", to_string(r.status)}};
    if (r.region) doc["region"] = to_string(*r.region);
    if (r.witness) doc["witness"] = state_to_json(*r.witness);
    return doc;
}

std::string floor_text(const FloorResult& r) {
    std::string out = kv("value", r.value) + kv("status", to_string(r.status));
    if (r.region) out += kv("region", to_string(*r.region));
    return out;
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        double v = std::stod(item, &pos);
        if (pos != item.size()) throw CLI::ValidationError("--values", "bad number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::locale::global(std::locale::classic());
    CLI::App app{"Minimal-entanglement floors from measured data"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--json", opt.as_json, "emit a single JSON document on stdout");

    // ---- floor ------------------------------------------------------------
    auto* floor_cmd = app.add_subcommand("floor", "evaluate a closed-form floor");
    floor_cmd->require_subcommand(1);

    double cxx = 0, cyy = 0, czz = 0, p = 0, i_ab = 0, s_ab = 0, z1 = 0, z2 = 0;
    double cxxx = 0, c1zz = 0, czz1 = 0, tol = 1e-6;

    auto* f_xxzz = floor_cmd->add_subcommand("xxzz", "floor from Cxx and Czz");
    f_xxzz->add_option("--cxx", cxx)->required();
    f_xxzz->add_option("--czz", czz)->required();

    auto* f_xyz = floor_cmd->add_subcommand("xyz", "floor from Cxx, Cyy and Czz");
    f_xyz->add_option("--cxx", cxx)->required();
    f_xyz->add_option("--cyy", cyy)->required();
    f_xyz->add_option("--czz", czz)->required();

    auto* f_pc = floor_cmd->add_subcommand("purity-czz", "floor from purity P and connected Czz");
    f_pc->add_option("--p", p)->required();
    f_pc->add_option("--czz", czz)->required();

    auto* f_mi = floor_cmd->add_subcommand("mutual-info", "floor from mutual information and entropy");
    f_mi->add_option("--i", i_ab)->required();
    f_mi->add_option("--s", s_ab)->required();

    auto* f_local = floor_cmd->add_subcommand("local", "floor from Czz, Cxx and local z-means");
    f_local->add_option("--czz", czz)->required();
    f_local->add_option("--cxx", cxx)->required();
    f_local->add_option("--z1", z1)->required();
    f_local->add_option("--z2", z2)->required();

    auto* f_rob = floor_cmd->add_subcommand("tri-robustness", "minimal random robustness (3 qubits)");
    f_rob->add_option("--cxxx", cxxx)->required();
    f_rob->add_option("--c1zz", c1zz)->required();
    f_rob->add_option("--czz1", czz1)->required();

    auto* f_e3 = floor_cmd->add_subcommand("tri-relent", "minimal relative entropy E3 (3 qubits)");
    f_e3->add_option("--cxxx", cxxx)->required();
    f_e3->add_option("--c1zz", c1zz)->required();
    f_e3->add_option("--czz1", czz1)->required();
    f_e3->add_option("--tol", tol, "multi-start agreement tolerance")->capture_default_str();

    // ---- certify ----------------------------------------------------------
    auto* certify_cmd = app.add_subcommand("certify", "verify a dual certificate");
    std::string builtin, cert_file, values_csv;
    auto* b_opt = certify_cmd->add_option("--builtin", builtin, "xxzz | xyz | purity");
    auto* cfile_opt = certify_cmd->add_option("--file", cert_file, "certificate JSON path");
    b_opt->excludes(cfile_opt);
    certify_cmd->add_option("--values", values_csv,
                            "comma-separated measured values aligned with the observables "
                            "(a0 = 1 for the identity); prints the induced bound");

    // ---- montecarlo ---------------------------------------------------------
    auto* mc_cmd = app.add_subcommand("montecarlo", "sample states and test the universal inequalities");
    std::string family_name = "hilbert-schmidt-mixed", check_name;
    int mc_n = 1000;
    uint64_t mc_seed = 1;
    mc_cmd->add_option("--family", family_name,
                       "haar-pure | hilbert-schmidt-mixed | pure-product | separable-mixture")
        ->required();
    mc_cmd->add_option("--n", mc_n)->required();
    mc_cmd->add_option("--seed", mc_seed)->required();
    mc_cmd->add_option("--check", check_name, "th1 | boundary-I | elower");

    // ---- scan ----------------------------------------------------------------
    auto* scan_cmd = app.add_subcommand("scan", "evaluate a floor over a grid");
    std::string preset, spec_file;
    auto* preset_opt = scan_cmd->add_option("--preset", preset, "fig1 | fig2 | fig3 | fig4");
    auto* spec_opt = scan_cmd->add_option("--spec", spec_file, "scan spec JSON path");
    preset_opt->excludes(spec_opt);

    // ---- state-report -----------------------------------------------------
    auto* report_cmd = app.add_subcommand("state-report", "all functionals of a state file");
    std::string state_file;
    report_cmd->add_option("--file", state_file, "state JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return 64;
    }

    try {
        if (f_xxzz->parsed()) {
            FloorResult r = floor_xx_zz(cxx, czz);
            emit(opt, floor_json("xxzz", {{"cxx", cxx}, {"czz", czz}}, r), floor_text(r));
        } else if (f_xyz->parsed()) {
            FloorResult r = floor_xx_yy_zz(cxx, cyy, czz);
            emit(opt, floor_json("xyz", {{"cxx", cxx}, {"cyy", cyy}, {"czz", czz}}, r), floor_text(r));
        } else if (f_pc->parsed()) {
            PurityCzzFloor r = floor_purity_czz(p, czz);
            json doc{{"verb", "floor"}, {"kind", "purity-czz"},
                     {"inputs", {{"p", p}, {"czz", czz}}},
                     {"region", to_string(r.region)},
                     {"value", r.value}, {"status", to_string(r.status)},
                     {"lower_bound", r.proven_lower}};
            if (r.witness) doc["witness"] = state_to_json(*r.witness);
            emit(opt, doc,
                 kv("region", to_string(r.region)) + kv("value", r.value) +
                     kv("status", to_string(r.status)) + kv("lower_bound", r.proven_lower));
        } else if (f_mi->parsed()) {
            FloorResult r = floor_mutual_info(i_ab, s_ab);
            emit(opt, floor_json("mutual-info", {{"i", i_ab}, {"s", s_ab}}, r), floor_text(r));
        } else if (f_local->parsed()) {
            FloorResult r = floor_local_stats(czz, cxx, z1, z2);
            emit(opt, floor_json("local", {{"czz", czz}, {"cxx", cxx}, {"z1", z1}, {"z2", z2}}, r),
                 floor_text(r));
        } else if (f_rob->parsed()) {
            FloorResult r = min_random_robustness({cxxx, c1zz, czz1});
            emit(opt, floor_json("tri-robustness", {{"cxxx", cxxx}, {"c1zz", c1zz}, {"czz1", czz1}}, r),
                 floor_text(r));
        } else if (f_e3->parsed()) {
            FloorResult r = min_e3({cxxx, c1zz, czz1}, tol, Exec::Parallel);
            json inputs{{"cxxx", cxxx}, {"c1zz", c1zz}, {"czz1", czz1}, {"tol", tol}};
            emit(opt, floor_json("tri-relent", inputs, r), floor_text(r));
        } else if (certify_cmd->parsed()) {
            if (builtin.empty() == cert_file.empty())
                throw CLI::ValidationError("certify", "pass exactly one of --builtin or --file");
            DualCertificate cert =
                builtin.empty() ? certificate_from_file(cert_file) : builtin_certificate(builtin);
            CertificateReport rep = verify_certificate(cert);
            json doc{{"verb", "certify"}, {"certificate", cert.name},
                     {"operator_norm", rep.operator_norm}, {"min_eig_slack", rep.min_eig_slack},
                     {"valid", rep.valid}};
            std::string text = kv("certificate", cert.name) + kv("operator_norm", rep.operator_norm) +
                               kv("min_eig_slack", rep.min_eig_slack) +
                               kv("valid", rep.valid ? "true" : "false");
            if (!values_csv.empty()) {
                double bound = bound_from_certificate(cert, parse_values(values_csv));
                doc["bound"] = bound;
                text += kv("bound", bound);
            }
            emit(opt, doc, text);
        } else if (mc_cmd->parsed()) {
            SampleFamily family = SampleFamily::parse(family_name);
            auto records = montecarlo_cloud(family, mc_n, mc_seed);
            Table t;
            t.columns = {"P", "Q", "connected_czz", "E_N", "I", "S"};
            t.rows.reserve(records.size());
            for (const auto& r : records)
                t.rows.push_back({r.P, r.Q, r.connected_czz, r.E_N, r.I, r.S});
            long violations = -1;
            if (!check_name.empty()) {
                violations = 0;
                for (const auto& r : records) {
                    bool bad = false;
                    if (check_name == "th1") bad = r.Q + 0.5 * r.connected_czz > 1.0 + 1e-12;
                    else if (check_name == "boundary-I")
                        bad = r.P < r.connected_czz * r.connected_czz / 3.0 - 1e-12;
                    else if (check_name == "elower")
                        bad = r.E_N < log2_plus(r.Q + 0.5 * r.connected_czz) - 1e-9;
                    else throw CLI::ValidationError("--check", "unknown check '" + check_name + "'");
                    if (bad) ++violations;
                }
            }
            json doc{{"verb", "montecarlo"}, {"family", family.name()}, {"n", mc_n},
                     {"seed", mc_seed}, {"records", table_to_json(t)}};
            std::string text = table_to_csv(t);
            if (violations >= 0) {
                doc["check"] = check_name;
                doc["violations"] = violations;
                text += "violations: " + std::to_string(violations) + " / " + std::to_string(mc_n) + "\n";
            }
            emit(opt, doc, text);
        } else if (scan_cmd->parsed()) {
            if (preset.empty() == spec_file.empty())
                throw CLI::ValidationError("scan", "pass exactly one of --preset or --spec");
            Table t = preset.empty() ? grid_scan(scan_spec_from_json(load_json_file(spec_file)))
                                     : scan_preset(preset);
            json doc{{"verb", "scan"}, {"preset", preset}, {"rows", table_to_json(t)}};
            emit(opt, doc, table_to_csv(t));
        } else if (report_cmd->parsed()) {
            DensityMatrix rho = state_from_file(state_file);
            json doc{{"verb", "state-report"}, {"dim", rho.dim()}};
            std::string text = kv("dim", fmt12(rho.dim()));
            auto add = [&](const std::string& key, double v) {
                doc[key] = v;
                text += kv(key, v);
            };
            add("purity_Q", purity_Q(rho));
            add("entropy", entropy(rho));
            if (rho.qubits() == 2) {
                add("purity_P", purity_P(rho));
                add("mutual_information", mutual_information(rho));
                add("connected_czz", connected_czz(rho));
                for (const std::string w : {"xx", "yy", "zz", "z1", "1z"})
                    add("corr_" + w, correlation(rho, w));
                add("log_negativity", log_negativity(rho));
            } else if (rho.qubits() == 3) {
                for (const std::string w : {"xxx", "1zz", "zz1", "z1z"})
                    add("corr_" + w, correlation(rho, w));
                add("log_negativity_cut1", log_negativity(rho, Bipartition::cut(0)));
                add("log_negativity_cut2", log_negativity(rho, Bipartition::cut(1)));
                add("log_negativity_cut3", log_negativity(rho, Bipartition::cut(2)));
            }
            emit(opt, doc, text);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 64;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceError& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 64;
    }
    return 0;
}
