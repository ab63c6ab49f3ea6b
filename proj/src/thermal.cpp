#include "spinstar/thermal.hpp"

#include <cmath>

#include "spinstar/hamiltonian.hpp"

namespace spinstar {

ThermalEnsemble thermal_weights(double temperature, double g, double cutoff_tol) {
    if (!(temperature > 0.0)) throw std::invalid_argument("thermal_weights: temperature must be > 0");
    if (!(g > 0.0)) throw std::invalid_argument("thermal_weights: g must be > 0");
    if (!(cutoff_tol > 0.0 && cutoff_tol < 1.0))
        throw std::invalid_argument("thermal_weights: cutoff_tol must be in (0,1)");

    const double r = std::exp(-2.0 * g / temperature);  // Boltzmann ratio per Fock level
    ThermalEnsemble ens;

    if (r <= 0.0) {  // frozen bath
        ens.m_cutoff = 0;
        ens.weights = {1.0};
        ens.tail_mass = 0.0;
        return ens;
    }

    // smallest m_C with tail r^(m_C+1) <= cutoff_tol
    int m_c = std::max(0, static_cast<int>(std::ceil(std::log(cutoff_tol) / std::log(r) - 1.0)));
    while (std::pow(r, m_c + 1) > cutoff_tol) ++m_c;
    while (m_c > 0 && std::pow(r, m_c) <= cutoff_tol) --m_c;

    ens.m_cutoff = m_c;
    ens.weights.resize(m_c + 1);
    double sum = 0.0, comp = 0.0;  // Kahan, so sum + tail stays exact to ~1e-16
    for (int m = 0; m <= m_c; ++m) {
        const double w = (1.0 - r) * std::exp(-2.0 * g * m / temperature);
        ens.weights[m] = w;
        const double y = w - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    ens.tail_mass = 1.0 - sum;
    return ens;
}

namespace {

// rho += w * Tr_B |psi><psi| for one member column.
void accumulate_partial_trace(Eigen::Matrix4cd& rho, double weight,
                              const Eigen::Ref<const Eigen::VectorXcd>& psi, int n_fock) {
    for (int k = 0; k < n_fock; ++k) {
        const auto block = psi.segment<kQubitDim>(kQubitDim * k);
        rho.noalias() += weight * (block * block.adjoint());
    }
}

double excitation_of_column(const Eigen::Ref<const Eigen::VectorXcd>& psi) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
        const double p = std::norm(psi[i]);
        if (p != 0.0)
            acc += p * (decode_fock(static_cast<int>(i)) +
                        qubit_excitation(decode_qubit(static_cast<int>(i))));
    }
    return acc;
}

}  // namespace

ReducedDensityMatrix
partial_trace_bath(const std::vector<std::pair<double, JointState>>& members) {
    ReducedDensityMatrix rho;
    for (const auto& [weight, psi] : members) {
        if (weight < 0.0) throw std::invalid_argument("partial_trace_bath: negative weight");
        accumulate_partial_trace(rho.mat, weight, psi.amplitudes, psi.n_fock);
    }
    rho.mat = 0.5 * (rho.mat + rho.mat.adjoint()).eval();
    rho.raw_trace = rho.mat.trace().real();
    return rho;
}

ReducedTrajectory evolve_reduced(const SimParams& params, const QubitPairState& psi0,
                                 const std::vector<double>& t_grid, Method method) {
    params.validate();
    ReducedTrajectory traj;
    traj.times = t_grid;
    traj.ensemble = thermal_weights(params.temperature, params.g, params.cutoff_tol);

    const int n_fock = traj.ensemble.m_cutoff + 3;
    const int n_members = traj.ensemble.m_cutoff + 1;
    const Hamiltonian h = build_hamiltonian(params, n_fock);

    // members as columns of one block, lockstep propagation
    Eigen::MatrixXcd columns(h.dim(), n_members);
    std::vector<double> exc0(n_members);
    for (int m = 0; m < n_members; ++m) {
        const JointState start = make_initial_joint(psi0, m, n_fock);
        columns.col(m) = start.amplitudes;
        exc0[m] = excitation_number(start);
    }

    const std::size_t nt = t_grid.size();
    std::vector<Eigen::Matrix4cd> acc(nt, Eigen::Matrix4cd::Zero());
    EnsembleDiagnostics diag;

    PropagationReport rep = evolve_columns_visit(
        h, std::move(columns), t_grid, method, params,
        [&](std::size_t i, const Eigen::MatrixXcd& cols) {
            for (int m = 0; m < n_members; ++m) {
                accumulate_partial_trace(acc[i], traj.ensemble.weights[m], cols.col(m), n_fock);
                diag.max_excitation_drift =
                    std::max(diag.max_excitation_drift,
                             std::abs(excitation_of_column(cols.col(m)) - exc0[m]));
            }
        });
    diag.max_norm_error = rep.max_norm_error;
    diag.steps_taken = rep.steps_taken;
    diag.step_halvings = rep.step_halvings;

    diag.min_eigenvalue = std::numeric_limits<double>::infinity();
    traj.rho.resize(nt);
    for (std::size_t i = 0; i < nt; ++i) {
        ReducedDensityMatrix rdm;
        rdm.mat = acc[i];
        diag.max_hermiticity_error =
            std::max(diag.max_hermiticity_error, rdm.hermiticity_error());
        rdm.mat = 0.5 * (rdm.mat + rdm.mat.adjoint()).eval();
        rdm.raw_trace = rdm.mat.trace().real();
        const double deficit = 1.0 - rdm.raw_trace;
        diag.max_trace_deficit = std::max(diag.max_trace_deficit, deficit);
        if (deficit > 10.0 * params.cutoff_tol)
            throw CutoffError("evolve_reduced: trace deficit exceeds 10*cutoff_tol; "
                              "thermal cutoff too small");
        rdm.mat /= rdm.raw_trace;
        diag.min_eigenvalue = std::min(diag.min_eigenvalue, rdm.min_eigenvalue());
        check_reduced_invariants(rdm, params.trace_tol);
        traj.rho[i] = std::move(rdm);
    }
    traj.diag = diag;
    return traj;
}

}  // namespace spinstar
