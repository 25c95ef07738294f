#include "entfloor/scan.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>

namespace entfloor {

namespace {

struct Params {
    std::map<std::string, double> vals;

    double get(const std::string& key) const {
        auto it = vals.find(key);
        if (it == vals.end()) throw std::invalid_argument("scan: missing parameter '" + key + "'");
        return it->second;
    }
    double get_or(const std::string& key, double dflt) const {
        auto it = vals.find(key);
        return it == vals.end() ? dflt : it->second;
    }
};

struct FloorEval {
    std::vector<std::string> value_columns;
    // fills one cell per value column; throws InfeasibleError for no-state points
    std::function<std::vector<Cell>(const Params&)> eval;
};

FloorEval make_eval(const std::string& kind) {
    if (kind == "xxzz")
        return {{"value", "status"}, [](const Params& p) -> std::vector<Cell> {
                    FloorResult r = floor_xx_zz(p.get("cxx"), p.get("czz"));
                    return {r.value, to_string(r.status)};
                }};
    if (kind == "xyz")
        return {{"value", "status"}, [](const Params& p) -> std::vector<Cell> {
                    FloorResult r = floor_xx_yy_zz(p.get("cxx"), p.get("cyy"), p.get("czz"));
                    return {r.value, to_string(r.status)};
                }};
    if (kind == "purity-czz")
        return {{"region", "value", "status", "lower_bound"}, [](const Params& p) -> std::vector<Cell> {
                    PurityCzzFloor r = floor_purity_czz(p.get("p"), p.get("czz"));
                    return {to_string(r.region), r.value, to_string(r.status), r.proven_lower};
                }};
    if (kind == "mutual-info")
        return {{"value", "status"}, [](const Params& p) -> std::vector<Cell> {
                    FloorResult r = floor_mutual_info(p.get("i"), p.get("s"));
                    return {r.value, to_string(r.status)};
                }};
    if (kind == "local")
        return {{"value", "status"}, [](const Params& p) -> std::vector<Cell> {
                    FloorResult r = floor_local_stats(p.get("czz"), p.get("cxx"), p.get("z1"), p.get("z2"));
                    return {r.value, to_string(r.status)};
                }};
    if (kind == "tri-robustness")
        return {{"value", "status"}, [](const Params& p) -> std::vector<Cell> {
                    FloorResult r = min_random_robustness({p.get("cxxx"), p.get("c1zz"), p.get("czz1")});
                    return {r.value, to_string(r.status)};
                }};
    if (kind == "tri-relent")
        return {{"value", "status"}, [](const Params& p) -> std::vector<Cell> {
                    FloorResult r = min_e3({p.get("cxxx"), p.get("c1zz"), p.get("czz1")},
                                           p.get_or("tol", 1e-6));
                    return {r.value, to_string(r.status)};
                }};
    throw std::invalid_argument("unknown floor kind '" + kind + "'");
}

double axis_value(const ScanAxis& ax, int i) {
    if (ax.steps <= 1) return ax.from;
    return ax.from + (ax.to - ax.from) * i / (ax.steps - 1);
}

}  // namespace

ScanSpec scan_spec_from_json(const nlohmann::json& j) {
    ScanSpec spec;
    spec.floor_kind = j.at("floor").get<std::string>();
    for (const auto& a : j.at("axes")) {
        ScanAxis ax;
        ax.param = a.at("param").get<std::string>();
        ax.from = a.at("from").get<double>();
        ax.to = a.at("to").get<double>();
        ax.steps = a.at("steps").get<int>();
        if (ax.steps < 1 || (ax.steps < 2 && ax.from != ax.to))
            throw std::invalid_argument("scan axis needs at least 2 steps");
        spec.axes.push_back(ax);
    }
    if (spec.axes.empty() || spec.axes.size() > 2)
        throw std::invalid_argument("scan supports 1 or 2 axes");
    if (j.contains("fixed"))
        for (auto it = j.at("fixed").begin(); it != j.at("fixed").end(); ++it)
            spec.fixed[it.key()] = it.value().get<double>();
    return spec;
}

Table grid_scan(const ScanSpec& spec, Exec exec) {
    if (spec.axes.empty() || spec.axes.size() > 2)
        throw std::invalid_argument("scan supports 1 or 2 axes");
    FloorEval fe = make_eval(spec.floor_kind);

    Table t;
    for (const auto& ax : spec.axes) t.columns.push_back(ax.param);
    for (const auto& c : fe.value_columns) t.columns.push_back(c);

    int n1 = spec.axes[0].steps;
    int n2 = spec.axes.size() == 2 ? spec.axes[1].steps : 1;
    t.rows.resize(static_cast<size_t>(n1) * n2);

    std::exception_ptr first_error;
    std::mutex error_mutex;
    parallel_for(static_cast<std::ptrdiff_t>(n1) * n2, exec, [&](std::ptrdiff_t idx) {
        int i = static_cast<int>(idx / n2), k = static_cast<int>(idx % n2);
        Params p{spec.fixed};
        double v1 = axis_value(spec.axes[0], i);
        p.vals[spec.axes[0].param] = v1;
        std::vector<Cell> row{v1};
        if (spec.axes.size() == 2) {
            double v2 = axis_value(spec.axes[1], k);
            p.vals[spec.axes[1].param] = v2;
            row.push_back(v2);
        }
        try {
            for (Cell& c : fe.eval(p)) row.push_back(std::move(c));
        } catch (const InfeasibleError&) {
            for (size_t c = 0; c < fe.value_columns.size(); ++c) row.emplace_back(std::string("infeasible"));
        } catch (...) {
            std::lock_guard<std::mutex> lk(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
        t.rows[idx] = std::move(row);
    });
    if (first_error) std::rethrow_exception(first_error);
    return t;
}

Table scan_preset(const std::string& name, Exec exec) {
    if (name == "fig1") {
        ScanSpec spec;
        spec.floor_kind = "mutual-info";
        spec.axes = {{"s", 0.0, 2.0, 41}, {"i", 0.0, 2.0, 41}};
        return grid_scan(spec, exec);
    }
    if (name == "fig2") {
        ScanSpec spec;
        spec.floor_kind = "purity-czz";
        spec.axes = {{"p", 0.0, 1.0, 41}, {"czz", 0.0, 1.0, 41}};
        return grid_scan(spec, exec);
    }
    if (name == "fig3") {
        ScanSpec spec;
        spec.floor_kind = "tri-relent";
        spec.axes = {{"c1zz", -1.0, 1.0, 11}, {"czz1", -1.0, 1.0, 11}};
        spec.fixed = {{"cxxx", 1.0}, {"tol", 1e-6}};
        return grid_scan(spec, exec);
    }
    if (name == "fig4") {
        // two curves: the floor with local statistics vs correlations only
        const double czz = 0.9, z1 = 0.3, z2 = 0.2;
        Table t;
        t.columns = {"cxx", "with_locals", "correlations_only"};
        const int n = 21;
        t.rows.resize(n);
        parallel_for(n, exec, [&](std::ptrdiff_t i) {
            double cxx = 0.05 * static_cast<double>(i);
            std::vector<Cell> row{cxx};
            try {
                row.emplace_back(floor_local_stats(czz, cxx, z1, z2).value);
            } catch (const InfeasibleError&) {
                row.emplace_back(std::string("infeasible"));
            }
            try {
                row.emplace_back(floor_xx_zz(cxx, czz).value);
            } catch (const InfeasibleError&) {
                row.emplace_back(std::string("infeasible"));
            }
            t.rows[i] = std::move(row);
        });
        return t;
    }
    throw std::invalid_argument("unknown preset '" + name + "' (use fig1..fig4)");
}

}  // namespace entfloor
