#pragma once

// Boltzmann ensemble over bath Fock states: weights w_m = exp(-2gm/T)/Z,
// Z = 1/(1 - exp(-2g/T)), truncated at the smallest m_C whose geometric
// tail mass is <= cutoff_tol. Members evolve independently; the reduced
// two-qubit state is the weight-ordered sum of per-member partial traces.

#include <utility>
#include <vector>

#include "spinstar/core_space.hpp"
#include "spinstar/propagator.hpp"

namespace spinstar {

struct ThermalEnsemble {
    int m_cutoff = 0;             // highest retained initial Fock level
    std::vector<double> weights;  // w_m for m = 0..m_cutoff
    double tail_mass = 0.0;       // discarded probability
};

ThermalEnsemble thermal_weights(double temperature, double g, double cutoff_tol);

// Weighted partial trace over the bath mode,
// rho[q,q'] = sum_m w_m sum_k Psi_m[4k+q] conj(Psi_m[4k+q']).
ReducedDensityMatrix
partial_trace_bath(const std::vector<std::pair<double, JointState>>& members);

struct EnsembleDiagnostics {
    double max_norm_error = 0.0;
    double max_excitation_drift = 0.0;
    double max_hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;
    double max_trace_deficit = 0.0;
    long steps_taken = 0;
    int step_halvings = 0;
};

struct ReducedTrajectory {
    std::vector<double> times;
    std::vector<ReducedDensityMatrix> rho;  // renormalized to trace 1
    ThermalEnsemble ensemble;
    EnsembleDiagnostics diag;
};

// Full pipeline: embed psi0 at each retained Fock level, evolve every member
// on a common space with n_fock = m_C + 3, and reduce at each grid time.
ReducedTrajectory evolve_reduced(const SimParams& params, const QubitPairState& psi0,
                                 const std::vector<double>& t_grid, Method method);

}  // namespace spinstar
