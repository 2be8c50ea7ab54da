// Steady states, time evolution and observables of built Liouvillians.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "optocool/liouvillian.hpp"

namespace optocool {

struct SteadyStateOptions {
    // Acceptance threshold on the scaled residual ||L vec(rho)||_2 / max|L|.
    double tol = 1e-10;
    // Global vectorized row whose equation is replaced by the trace
    // constraint; defaults to the first diagonal entry's row. Must lie in
    // the component of the sparsity graph that carries the trace.
    std::optional<Eigen::Index> replace_row;
    // Largest trace-block dimension handed to the direct factorization;
    // beyond it the solve falls back to an iterative least-squares method,
    // still subject to the residual acceptance test.
    Eigen::Index direct_limit = 300000;
};

struct SteadyStateResult {
    DensityMatrix state;
    double residual;  // ||L vec(rho)||_2 / max|L|, after positivity repair
    std::vector<double> top_level_populations;  // per mode
    std::vector<bool> truncation_flags;         // population > 1e-6
};

SteadyStateResult steady_state(const Liouvillian& L, double tol = 1e-10);
SteadyStateResult steady_state(const Liouvillian& L, const SteadyStateOptions& opts);

struct Observable {
    std::string label;
    Operator op;
};

// Number operator and top-level projector per mode.
std::vector<Observable> default_observables(const std::vector<int>& dims);

struct Trajectory {
    std::vector<double> times;
    std::map<std::string, std::vector<double>> observables;
    DensityMatrix final_state;
};

struct EvolveOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
};

// Integrates d rho/dt = L rho with an adaptive Dormand-Prince RK45 pair,
// sampling the observables at every grid time. The grid must start at 0
// and increase.
Trajectory evolve(const Liouvillian& L, const DensityMatrix& rho0,
                  const std::vector<double>& t_grid,
                  const std::vector<Observable>& observables = {},
                  const EvolveOptions& opts = {});

// Dense exp(L t) vec(rho0) reference, usable while the Hilbert dimension
// stays at most 64. Test oracle; independent of the evolve() path.
DensityMatrix expm_oracle(const Liouvillian& L, const DensityMatrix& rho0, double t);

// Re(tr(observable * rho)); the imaginary part must vanish to 1e-10.
double expectation(const DensityMatrix& state, const Operator& observable);

// Population of the highest retained Fock level of each mode.
std::vector<double> top_level_populations(const Eigen::MatrixXcd& rho,
                                          const std::vector<int>& dims);

// Mean of the number operator of each mode (diagonal sums; no operators).
std::vector<double> mode_number_means(const Eigen::MatrixXcd& rho,
                                      const std::vector<int>& dims);

}  // namespace optocool
