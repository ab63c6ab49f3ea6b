#include "spinstar/core_space.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace spinstar {

void SimParams::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("SimParams: " + what); };
    if (!(g > 0.0)) fail("g must be > 0");
    if (!(temperature > 0.0)) fail("temperature must be > 0");
    if (!(cutoff_tol > 0.0 && cutoff_tol < 1.0)) fail("cutoff_tol must be in (0,1)");
    if (k_max < 1) fail("k_max must be >= 1");
    if (!(dt > 0.0)) fail("dt must be > 0");
    if (!(t_max >= dt) && t_max != 0.0) fail("t_max must be >= dt (or 0 for a single sample)");
    if (!(trace_tol > 0.0)) fail("trace_tol must be > 0");
}

double QubitPairState::norm_sq() const {
    return std::norm(a00) + std::norm(a11) + std::norm(a01) + std::norm(a10);
}

Complex QubitPairState::amplitude(int q) const {
    switch (q) {
        case 0: return a00;
        case 1: return a01;
        case 2: return a10;
        case 3: return a11;
        default: throw std::invalid_argument("qubit index out of range");
    }
}

QubitPairState QubitPairState::product_11() {
    QubitPairState s;
    s.a11 = 1.0;
    return s;
}

QubitPairState QubitPairState::bell_01_10() {
    QubitPairState s;
    s.a01 = s.a10 = 1.0 / std::numbers::sqrt2;
    return s;
}

QubitPairState QubitPairState::bell_00_11() {
    QubitPairState s;
    s.a00 = s.a11 = 1.0 / std::numbers::sqrt2;
    return s;
}

JointState make_initial_joint(const QubitPairState& psi, int m, int n_fock) {
    if (std::abs(psi.norm_sq() - 1.0) > 1e-12)
        throw std::invalid_argument("make_initial_joint: initial qubit state is not normalized");
    if (m < 0 || m > n_fock - 3)
        throw std::out_of_range("make_initial_joint: Fock level outside 0..n_fock-3");
    JointState state;
    state.n_fock = n_fock;
    state.amplitudes = Eigen::VectorXcd::Zero(kQubitDim * n_fock);
    for (int q = 0; q < kQubitDim; ++q)
        state.amplitudes[encode_index(m, q)] = psi.amplitude(q);
    return state;
}

double excitation_number(const JointState& state) {
    double acc = 0.0;
    for (int i = 0; i < state.dim(); ++i) {
        const double p = std::norm(state.amplitudes[i]);
        if (p != 0.0) acc += p * (decode_fock(i) + qubit_excitation(decode_qubit(i)));
    }
    return acc;
}

double ReducedDensityMatrix::hermiticity_error() const {
    return (mat - mat.adjoint()).cwiseAbs().maxCoeff();
}

double ReducedDensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(mat, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void check_reduced_invariants(const ReducedDensityMatrix& rho, double trace_tol) {
    if (rho.hermiticity_error() > 1e-12)
        throw std::runtime_error("reduced density matrix not Hermitian");
    if (std::abs(rho.mat.trace().real() - 1.0) > trace_tol)
        throw std::runtime_error("reduced density matrix trace deviates from 1");
    if (rho.min_eigenvalue() < -1e-10)
        throw std::runtime_error("reduced density matrix has a negative eigenvalue");
}

}  // namespace spinstar
