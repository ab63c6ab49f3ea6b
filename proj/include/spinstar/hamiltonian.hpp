#pragma once

// H = H_S + H_SB + H_B on the truncated joint space:
//   H_S  = mu0 (sigma^z_1 + sigma^z_2) + Omega (S+_1 S-_2 + S-_1 S+_2)
//   H_SB = g0 [(S+_1 + S+_2) b + (S-_1 + S-_2) b†]
//   H_B  = 2 g b†b
// The Zeeman term enters with Pauli z (splitting 2*mu0 per qubit); the
// flip-flop and exchange terms use the spin-1/2 ladder operators.

#include <memory>
#include <mutex>
#include <vector>
#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "spinstar/core_space.hpp"
#include "spinstar/params.hpp"

namespace spinstar {

struct ExcitationBlock {
    int excitation = 0;
    std::vector<int> indices;   // joint-space indices, ascending
    Eigen::MatrixXcd block;     // dense sub-matrix on those indices
};

// Hermitian eigensystem H = V diag(evals) V†, computed once on demand.
struct EigenSystem {
    Eigen::VectorXd evals;
    Eigen::MatrixXcd evecs;
};

// The scaled operator's spectrum is placed in [0, kScaledSpectrumCap].
inline constexpr double kScaledSpectrumCap = 32.0;

// Shift/scale data placing the spectrum of scale*(H - shift*I) in [0, cap].
struct SpectralPrecondition {
    double e_lo = 0.0;   // Gershgorin lower bound
    double e_hi = 0.0;   // Gershgorin upper bound
    double shift = 0.0;  // = e_lo
    double scale = 1.0;  // positive factor applied to (H - shift*I)
};

class Hamiltonian {
  public:
    Hamiltonian(Eigen::MatrixXcd matrix, SimParams params, int n_fock);

    int n_fock() const { return n_fock_; }
    int dim() const { return static_cast<int>(matrix_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    const SimParams& params() const { return params_; }

    // Cached lazily; shared read-only between users of a copy.
    const EigenSystem& eigensystem() const;
    const SpectralPrecondition& precondition() const;
    // Sparse row-major copy of scale*(H - shift*I) for fast application.
    const Eigen::SparseMatrix<Complex, Eigen::RowMajor>& scaled_sparse() const;

  private:
    struct Cache;
    int n_fock_;
    Eigen::MatrixXcd matrix_;
    SimParams params_;
    std::shared_ptr<Cache> cache_;
};

Hamiltonian build_hamiltonian(const SimParams& params, int n_fock);

// Partition of the index set by total excitation; each block is at most 4x4.
std::vector<ExcitationBlock> excitation_blocks(const Hamiltonian& h);

// Gershgorin bounds on the spectrum of a Hermitian matrix.
std::pair<double, double> gershgorin_bounds(const Eigen::MatrixXcd& m);

}  // namespace spinstar
