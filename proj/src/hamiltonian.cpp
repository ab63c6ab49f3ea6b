#include "spinstar/hamiltonian.hpp"

#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

namespace spinstar {

struct Hamiltonian::Cache {
    std::once_flag eigen_once;
    EigenSystem eigen;
    std::once_flag precond_once;
    SpectralPrecondition precond;
    Eigen::SparseMatrix<Complex, Eigen::RowMajor> scaled;
};

Hamiltonian::Hamiltonian(Eigen::MatrixXcd matrix, SimParams params, int n_fock)
    : n_fock_(n_fock),
      matrix_(std::move(matrix)),
      params_(std::move(params)),
      cache_(std::make_shared<Cache>()) {}

const EigenSystem& Hamiltonian::eigensystem() const {
    std::call_once(cache_->eigen_once, [this] {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix_);
        cache_->eigen.evals = es.eigenvalues();
        cache_->eigen.evecs = es.eigenvectors();
    });
    return cache_->eigen;
}

const SpectralPrecondition& Hamiltonian::precondition() const {
    std::call_once(cache_->precond_once, [this] {
        auto [lo, hi] = gershgorin_bounds(matrix_);
        SpectralPrecondition p;
        p.e_lo = lo;
        p.e_hi = hi;
        p.shift = lo;
        const double width = std::max(hi - lo, 1e-30);
        p.scale = kScaledSpectrumCap / width;
        cache_->precond = p;

        const int d = dim();
        Eigen::MatrixXcd shifted = p.scale * (matrix_ - p.shift * Eigen::MatrixXcd::Identity(d, d));
        cache_->scaled = shifted.sparseView(1.0, 1e-300);
        cache_->scaled.makeCompressed();
    });
    return cache_->precond;
}

const Eigen::SparseMatrix<Complex, Eigen::RowMajor>& Hamiltonian::scaled_sparse() const {
    precondition();
    return cache_->scaled;
}

Hamiltonian build_hamiltonian(const SimParams& params, int n_fock) {
    params.validate();
    if (n_fock < 3) throw std::invalid_argument("build_hamiltonian: n_fock must be >= 3");

    const int d = kQubitDim * n_fock;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);

    for (int m = 0; m < n_fock; ++m) {
        // mu0 (sigma^z_1 + sigma^z_2) + 2 g b†b
        for (int q = 0; q < kQubitDim; ++q)
            h(encode_index(m, q), encode_index(m, q)) =
                params.mu0 * 2.0 * sz_eigenvalue(q) + 2.0 * params.g * m;
        // Omega flip-flop between |01> and |10>
        h(encode_index(m, 1), encode_index(m, 2)) += params.omega;
        h(encode_index(m, 2), encode_index(m, 1)) += params.omega;
    }

    // g0 [(S+_1 + S+_2) b + h.c.]: raising one qubit absorbs a boson,
    // b|m> = sqrt(m)|m-1>.
    static constexpr int kRaisePairs[4][2] = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    for (int m = 1; m < n_fock; ++m) {
        const double amp = params.g0 * std::sqrt(static_cast<double>(m));
        for (const auto& pair : kRaisePairs) {
            const int i = encode_index(m, pair[0]);      // lower qubit excitation, m bosons
            const int j = encode_index(m - 1, pair[1]);  // raised qubit, m-1 bosons
            h(i, j) += amp;
            h(j, i) += amp;
        }
    }

    return Hamiltonian(std::move(h), params, n_fock);
}

std::vector<ExcitationBlock> excitation_blocks(const Hamiltonian& h) {
    std::map<int, std::vector<int>> sectors;
    for (int i = 0; i < h.dim(); ++i)
        sectors[decode_fock(i) + qubit_excitation(decode_qubit(i))].push_back(i);

    std::vector<ExcitationBlock> blocks;
    blocks.reserve(sectors.size());
    for (auto& [n, idx] : sectors) {
        ExcitationBlock b;
        b.excitation = n;
        b.indices = idx;
        const int s = static_cast<int>(idx.size());
        b.block.resize(s, s);
        for (int r = 0; r < s; ++r)
            for (int c = 0; c < s; ++c) b.block(r, c) = h.matrix()(idx[r], idx[c]);
        blocks.push_back(std::move(b));
    }
    return blocks;
}

std::pair<double, double> gershgorin_bounds(const Eigen::MatrixXcd& m) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        const double center = m(r, r).real();
        double radius = 0.0;
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            if (c != r) radius += std::abs(m(r, c));
        lo = std::min(lo, center - radius);
        hi = std::max(hi, center + radius);
    }
    return {lo, hi};
}

}  // namespace spinstar
