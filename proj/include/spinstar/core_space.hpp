#pragma once

// Hilbert-space conventions shared by all modules.
//
// Joint basis |q, m>: two qubits (q) times a truncated Fock mode (m),
// flattened as index i = 4*m + q with
//   q = 0: |00>, 1: |01>, 2: |10>, 3: |11>   (|1> = excited state)
// Total excitation N = m + (# qubits in |1>) is conserved by the dynamics.

#include <complex>
#include <Eigen/Dense>

#include "spinstar/params.hpp"

namespace spinstar {

using Complex = std::complex<double>;

inline constexpr int kQubitDim = 4;

inline int encode_index(int fock, int qubit) { return kQubitDim * fock + qubit; }
inline int decode_fock(int index) { return index / kQubitDim; }
inline int decode_qubit(int index) { return index % kQubitDim; }

// Number of excited qubits in basis state q.
inline int qubit_excitation(int q) { return (q & 1) + ((q >> 1) & 1); }

// Eigenvalue of S^z_1 + S^z_2 (S^z = diag(+1/2, -1/2) per qubit).
inline double sz_eigenvalue(int q) { return 0.5 * (qubit_excitation(q) * 2 - 2); }

// Initial pure state of the two central qubits,
// a00|00> + a11|11> + a01|01> + a10|10>.
struct QubitPairState {
    Complex a00{0.0, 0.0};
    Complex a11{0.0, 0.0};
    Complex a01{0.0, 0.0};
    Complex a10{0.0, 0.0};

    double norm_sq() const;
    // Amplitude of basis state q in the joint indexing above.
    Complex amplitude(int q) const;

    static QubitPairState product_11();
    static QubitPairState bell_01_10();
    static QubitPairState bell_00_11();
};

// State vector on (two qubits) x (n_fock Fock levels).
struct JointState {
    int n_fock = 0;
    Eigen::VectorXcd amplitudes;

    int dim() const { return kQubitDim * n_fock; }
    double norm() const { return amplitudes.norm(); }
};

// Embeds psi at Fock level m: |Psi(0)> = |psi>|m>.
// Requires m <= n_fock - 3 so the two reachable guard levels exist.
JointState make_initial_joint(const QubitPairState& psi, int m, int n_fock);

// <N> with N = Fock occupation + number of excited qubits.
double excitation_number(const JointState& state);

// 4x4 reduced state of the qubit pair, basis ordering as above.
struct ReducedDensityMatrix {
    Eigen::Matrix4cd mat = Eigen::Matrix4cd::Zero();
    double raw_trace = 0.0;  // trace before renormalization

    double hermiticity_error() const;
    double min_eigenvalue() const;
};

// Throws if rho is not Hermitian / normalized / PSD within tolerances.
void check_reduced_invariants(const ReducedDensityMatrix& rho, double trace_tol);

}  // namespace spinstar
