// solver.hpp — independent constrained minimizer of entanglement over density
// matrices (the brute-force cross-check for every closed form) plus the
// Monte-Carlo cloud generator.
#pragma once

#include <vector>

#include "entfloor/floors.hpp"
#include "entfloor/parallel.hpp"
#include "entfloor/qstate.hpp"

namespace entfloor {

enum class Functional { PurityQ, Entropy, MutualInfo, ConnectedCzz };

std::string to_string(Functional f);
Functional functional_from_string(const std::string& name);

struct LinearConstraint {
    Observable obs;
    double target = 0.0;
    double tolerance = 1e-6;
};

struct NonlinearConstraint {
    Functional fn = Functional::PurityQ;
    double target = 0.0;
    double tolerance = 1e-6;
};

struct ConstraintSet {
    std::vector<LinearConstraint> linear;
    std::vector<NonlinearConstraint> nonlinear;

    ConstraintSet& pauli(const std::string& word, double target, double tol = 1e-6);
    ConstraintSet& functional(Functional fn, double target, double tol = 1e-6);
};

struct SolverOptions {
    int restarts = 8;
    int max_iters = 6000;          // simplex iterations per penalty round
    double penalty_weight = 1e3;   // escalated tenfold, at most four times
    uint64_t seed = 0;
    Bipartition cut{1};            // objective: log-negativity across this cut
    Exec exec = Exec::Parallel;
};

struct SolveDiagnostics {
    double spread = 0.0;         // objective range over feasible restarts
    double max_violation = 0.0;  // worst constraint residual of the winner
    int feasible_restarts = 0;
};

struct NumericFloor {
    FloorResult result;  // status is always exact once the solve is accepted
    SolveDiagnostics diag;
};

// Parametrizes rho = T^dag T / Tr(T^dag T) over a general complex matrix T and
// minimizes log-negativity plus quadratic constraint penalties by multi-start
// Nelder-Mead. Throws InfeasibleError when no restart meets the tolerances and
// ConvergenceError when feasible restarts disagree by more than 1e-4.
NumericFloor min_entanglement_numeric(const ConstraintSet& cs, int dim, const SolverOptions& opts = {});

struct CloudRecord {
    double P, Q, connected_czz, E_N, I, S;
};

// n records, deterministic in (family, n, seed); record i depends only on
// seed and i, so serial and parallel runs emit identical tables.
std::vector<CloudRecord> montecarlo_cloud(const SampleFamily& family, int n, uint64_t seed,
                                          Exec exec = Exec::Parallel);

}  // namespace entfloor
