#pragma once

#include <stdexcept>
#include <string>

namespace spinstar {

// All energies in units of g, times in units of 1/g, hbar = k_B = 1.
struct SimParams {
    double mu0 = 0.0;          // field coupling mu_0
    double omega = 0.0;        // inter-qubit coupling Omega
    double g0 = 0.0;           // subsystem-bath coupling g_0
    double g = 1.0;            // bath coupling g (sets the unit system)
    double temperature = 1.0;  // bath temperature T
    double cutoff_tol = 1e-8;  // thermal tail mass allowed beyond the Fock cutoff
    int k_max = 20;            // Laguerre truncation order
    double alpha = 0.0;        // Laguerre family parameter
    double dt = 0.01;          // output time step
    double t_max = 20.0;       // final time
    double trace_tol = 1e-12;  // per-step norm-error bound

    void validate() const;
};

struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CutoffError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace spinstar
