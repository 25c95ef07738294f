// entfloor_bench — times the data-parallel kernels against their serial
// reference paths and checks that both produce identical output.
#include <chrono>
#include <cstdio>

#include "entfloor/multipartite.hpp"
#include "entfloor/scan.hpp"
#include "entfloor/solver.hpp"

using namespace entfloor;

namespace {

using clock_type = std::chrono::steady_clock;

template <typename Fn>
double time_s(Fn&& fn) {
    auto t0 = clock_type::now();
    fn();
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

bool tables_equal(const Table& a, const Table& b) {
    if (a.columns != b.columns || a.rows.size() != b.rows.size()) return false;
    for (size_t i = 0; i < a.rows.size(); ++i)
        if (a.rows[i] != b.rows[i]) return false;
    return true;
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-24s serial %8.3f s   parallel %8.3f s   speedup %.2fx   identical %s\n",
                name, serial_s, parallel_s, serial_s / parallel_s, identical ? "yes" : "NO");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; parallel path falls back to serial\n");
#endif

    {
        SampleFamily family{SampleKind::HilbertSchmidtMixed, 2, 16};
        std::vector<CloudRecord> serial_out, parallel_out;
        const int n = 20000;
        double ts = time_s([&] { serial_out = montecarlo_cloud(family, n, 7, Exec::Serial); });
        double tp = time_s([&] { parallel_out = montecarlo_cloud(family, n, 7, Exec::Parallel); });
        bool same = serial_out.size() == parallel_out.size();
        for (size_t i = 0; same && i < serial_out.size(); ++i)
            same = serial_out[i].P == parallel_out[i].P && serial_out[i].Q == parallel_out[i].Q &&
                   serial_out[i].connected_czz == parallel_out[i].connected_czz &&
                   serial_out[i].E_N == parallel_out[i].E_N && serial_out[i].I == parallel_out[i].I &&
                   serial_out[i].S == parallel_out[i].S;
        report("montecarlo_cloud 20k", ts, tp, same);
    }

    {
        ScanSpec spec;
        spec.floor_kind = "local";
        spec.axes = {{"cxx", 0.0, 0.9, 64}, {"czz", 0.0, 0.9, 64}};
        spec.fixed = {{"z1", 0.3}, {"z2", 0.2}};
        Table a, b;
        double ts = time_s([&] { a = grid_scan(spec, Exec::Serial); });
        double tp = time_s([&] { b = grid_scan(spec, Exec::Parallel); });
        report("grid_scan 64x64", ts, tp, tables_equal(a, b));
    }

    {
        ConstraintSet cs;
        cs.pauli("xx", 0.8).pauli("zz", 0.7);
        SolverOptions so;
        so.restarts = 8;
        NumericFloor a, b;
        so.exec = Exec::Serial;
        double ts = time_s([&] { a = min_entanglement_numeric(cs, 4, so); });
        so.exec = Exec::Parallel;
        double tp = time_s([&] { b = min_entanglement_numeric(cs, 4, so); });
        report("solver 8 restarts", ts, tp, a.result.value == b.result.value);
    }

    {
        TriData data{1.0, 0.5, 0.4};
        FloorResult a, b;
        double ts = time_s([&] { a = min_e3(data, 1e-6, Exec::Serial); });
        double tp = time_s([&] { b = min_e3(data, 1e-6, Exec::Parallel); });
        report("min_e3 8 restarts", ts, tp, a.value == b.value);
    }
    return 0;
}
