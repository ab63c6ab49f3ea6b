#pragma once

// Time propagation of a JointState under exp(-iHt).
//
// Primary scheme: truncated Laguerre expansion
//   U(t) = (1/(1+it))^(a+1) sum_k (it/(1+it))^k L_k^a(H)
// evaluated by the three-term recurrence on vectors, applied to the
// preconditioned operator H' = scale*(H - e_lo*I) with scaled time
// t' = t/scale and the shift undone by the phase exp(-i*e_lo*t).
// Oracle: exact propagation through the Hermitian eigendecomposition.

#include <functional>
#include <vector>

#include "spinstar/core_space.hpp"
#include "spinstar/hamiltonian.hpp"

namespace spinstar {

// A micro step keeps (spectral width) x (internal step) at or below this
// product, which leaves the k_max=20 truncation residual under 1e-13.
inline constexpr double kSpectralProductCap = 4.0;
inline constexpr int kMaxStepHalvings = 20;

enum class Method { laguerre, exact };

struct PropagationReport {
    long steps_taken = 0;        // micro-steps applied per trajectory
    double max_norm_error = 0.0; // max |  ||psi|| - 1 | before renormalization
    int step_halvings = 0;
};

// One truncated-expansion application over time tau. The result's norm
// deviation from 1 is the caller's step-acceptance test.
JointState laguerre_step(const Hamiltonian& h, const JointState& state,
                         double tau, int k_max, double alpha);

// V exp(-i diag(evals) t) V† applied to state.
JointState exact_propagate(const Hamiltonian& h, const JointState& state, double t);

// Batched propagation of independent unit-norm columns sharing one
// Hamiltonian (the ensemble driver). Visits the columns at every grid time.
using ColumnsVisitor = std::function<void(std::size_t index, const Eigen::MatrixXcd&)>;

PropagationReport evolve_columns_visit(const Hamiltonian& h, Eigen::MatrixXcd columns,
                                       const std::vector<double>& t_grid, Method method,
                                       const SimParams& params, const ColumnsVisitor& visit);

// Visits the state at every grid time (including t_grid[0] = 0).
using GridVisitor = std::function<void(std::size_t index, const JointState&)>;

PropagationReport evolve_visit(const Hamiltonian& h, const JointState& state,
                               const std::vector<double>& t_grid, Method method,
                               const SimParams& params, const GridVisitor& visit);

std::pair<std::vector<JointState>, PropagationReport>
evolve(const Hamiltonian& h, const JointState& state,
       const std::vector<double>& t_grid, Method method, const SimParams& params);

}  // namespace spinstar
