#pragma once

// Scalar observables of the reduced two-qubit state.

#include <Eigen/Dense>

#include "spinstar/core_space.hpp"

namespace spinstar {

struct ObservableRecord {
    double t = 0.0;
    double purity = 0.0;             // Tr(rho^2)
    double sz_total = 0.0;           // <S^z_1 + S^z_2>
    double entropy_one_qubit = 0.0;  // von Neumann entropy of Tr_2 rho, base 2
    double entropy_two_qubit = 0.0;  // von Neumann entropy of rho, base 2
    double concurrence = 0.0;
    double ppt_min_eig = 0.0;        // smallest partial-transpose eigenvalue
    double negativity = 0.0;
    double raw_trace = 0.0;
};

double purity(const ReducedDensityMatrix& rho);
double sz_total(const ReducedDensityMatrix& rho);

// Wootters concurrence from the spin-flipped product matrix spectrum.
double concurrence(const ReducedDensityMatrix& rho);

struct PptResult {
    Eigen::Vector4d spectrum;  // descending
    double negativity = 0.0;   // sum of |negative eigenvalues|
    bool entangled = false;    // min eigenvalue < -1e-10
};

// Partial transpose over the chosen qubit (1 or 2).
PptResult ppt_spectrum(const ReducedDensityMatrix& rho, int which_qubit);

// -sum p log2 p over the eigenvalues of a PSD, trace-1 matrix of any size.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

// Trace over the other qubit; keep is 1 or 2.
Eigen::Matrix2cd one_qubit_marginal(const ReducedDensityMatrix& rho, int keep);

ObservableRecord observe(double t, const ReducedDensityMatrix& rho);

}  // namespace spinstar
