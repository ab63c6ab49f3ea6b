#include "spinstar/propagator.hpp"

#include <cmath>
#include <complex>

namespace spinstar {

namespace {

using Eigen::MatrixXcd;

// sum_{k=0}^{k_max} c_k(t') L_k^a(H') X with
//   c_k = (1/(1+it'))^(a+1) (it'/(1+it'))^k,
//   L_0 = 1, L_1 = 1 + a - x,
//   (k+1) L_{k+1} = (2k+a+1-x) L_k - (k+a) L_{k-1}.
// Columns of X are independent states.
MatrixXcd laguerre_sum(const Eigen::SparseMatrix<Complex, Eigen::RowMajor>& hs,
                       const MatrixXcd& x, double tau_scaled, int k_max, double alpha) {
    const Complex it(0.0, tau_scaled);
    const Complex w = it / (1.0 + it);
    const Complex pref = std::pow(1.0 / (1.0 + it), alpha + 1.0);

    MatrixXcd v_prev = x;  // L_0 X
    MatrixXcd hv(x.rows(), x.cols());
    hv.noalias() = hs * v_prev;
    MatrixXcd v_curr = (alpha + 1.0) * v_prev - hv;  // L_1 X

    Complex coeff = pref;
    MatrixXcd acc = coeff * v_prev;
    coeff *= w;
    acc.noalias() += coeff * v_curr;

    MatrixXcd v_next(x.rows(), x.cols());
    for (int k = 1; k < k_max; ++k) {
        hv.noalias() = hs * v_curr;
        v_next = ((2.0 * k + alpha + 1.0) * v_curr - hv - (k + alpha) * v_prev) / (k + 1.0);
        coeff *= w;
        acc.noalias() += coeff * v_next;
        v_prev.swap(v_curr);
        v_curr.swap(v_next);
    }
    return acc;
}

MatrixXcd laguerre_block_step(const Hamiltonian& h, const MatrixXcd& columns, double tau,
                              int k_max, double alpha) {
    const SpectralPrecondition& p = h.precondition();
    MatrixXcd out = laguerre_sum(h.scaled_sparse(), columns, tau / p.scale, k_max, alpha);
    out *= std::exp(Complex(0.0, -p.shift * tau));
    return out;
}

void require_grid(const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("evolve: empty time grid");
    if (t_grid.front() != 0.0) throw std::invalid_argument("evolve: time grid must start at 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw std::invalid_argument("evolve: time grid must be strictly increasing");
}

// Per-column norm test against trace_tol; renormalizes accepted columns.
bool check_and_renormalize(MatrixXcd& columns, double trace_tol, double& worst) {
    for (Eigen::Index c = 0; c < columns.cols(); ++c) {
        const double norm = columns.col(c).norm();
        const double err = std::abs(norm - 1.0);
        if (err > trace_tol) return false;
        worst = std::max(worst, err);
        columns.col(c) /= norm;
    }
    return true;
}

}  // namespace

JointState laguerre_step(const Hamiltonian& h, const JointState& state, double tau,
                         int k_max, double alpha) {
    if (tau == 0.0) return state;
    JointState out;
    out.n_fock = state.n_fock;
    out.amplitudes = laguerre_block_step(h, state.amplitudes, tau, k_max, alpha);
    return out;
}

JointState exact_propagate(const Hamiltonian& h, const JointState& state, double t) {
    const EigenSystem& es = h.eigensystem();
    Eigen::VectorXcd c = es.evecs.adjoint() * state.amplitudes;
    c.array() *= (Complex(0.0, -t) * es.evals.array()).exp();
    JointState out;
    out.n_fock = state.n_fock;
    out.amplitudes = es.evecs * c;
    return out;
}

PropagationReport evolve_columns_visit(const Hamiltonian& h, Eigen::MatrixXcd columns,
                                       const std::vector<double>& t_grid, Method method,
                                       const SimParams& params, const ColumnsVisitor& visit) {
    require_grid(t_grid);
    if (columns.rows() != h.dim())
        throw std::invalid_argument("evolve: state and Hamiltonian dimensions differ");

    PropagationReport report;
    visit(0, columns);

    if (method == Method::exact) {
        const EigenSystem& es = h.eigensystem();
        MatrixXcd c(columns.rows(), columns.cols());
        c.noalias() = es.evecs.adjoint() * columns;
        for (std::size_t i = 1; i < t_grid.size(); ++i) {
            const double step = t_grid[i] - t_grid[i - 1];
            const Eigen::ArrayXcd phases = (Complex(0.0, -step) * es.evals.array()).exp();
            c.array().colwise() *= phases;
            columns.noalias() = es.evecs * c;
            double worst = 0.0;
            if (!check_and_renormalize(columns, std::max(params.trace_tol, 1e-9), worst))
                throw DivergenceError("evolve: exact propagation lost normalization");
            report.max_norm_error = std::max(report.max_norm_error, worst);
            ++report.steps_taken;
            visit(i, columns);
        }
        return report;
    }

    const SpectralPrecondition& p = h.precondition();
    const double max_scaled_step = kSpectralProductCap / kScaledSpectrumCap;

    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double macro = t_grid[i] - t_grid[i - 1];
        const double macro_scaled = macro / p.scale;
        long n_sub = std::max<long>(1, static_cast<long>(std::ceil(macro_scaled / max_scaled_step)));

        bool accepted = false;
        for (int halving = 0; halving <= kMaxStepHalvings; ++halving) {
            const double tau = macro / static_cast<double>(n_sub);
            MatrixXcd trial = columns;
            double worst = 0.0;
            bool ok = true;
            for (long s = 0; s < n_sub && ok; ++s) {
                trial = laguerre_block_step(h, trial, tau, params.k_max, params.alpha);
                ok = check_and_renormalize(trial, params.trace_tol, worst);
            }
            if (ok) {
                columns.swap(trial);
                report.steps_taken += n_sub;
                report.max_norm_error = std::max(report.max_norm_error, worst);
                accepted = true;
                break;
            }
            n_sub *= 2;
            ++report.step_halvings;
        }
        if (!accepted)
            throw DivergenceError("evolve: norm criterion not met after " +
                                  std::to_string(kMaxStepHalvings) + " halvings");
        visit(i, columns);
    }
    return report;
}

PropagationReport evolve_visit(const Hamiltonian& h, const JointState& state,
                               const std::vector<double>& t_grid, Method method,
                               const SimParams& params, const GridVisitor& visit) {
    JointState current;
    current.n_fock = state.n_fock;
    return evolve_columns_visit(
        h, state.amplitudes, t_grid, method, params,
        [&](std::size_t i, const Eigen::MatrixXcd& cols) {
            current.amplitudes = cols.col(0);
            visit(i, current);
        });
}

std::pair<std::vector<JointState>, PropagationReport>
evolve(const Hamiltonian& h, const JointState& state,
       const std::vector<double>& t_grid, Method method, const SimParams& params) {
    std::vector<JointState> states(t_grid.size());
    PropagationReport report = evolve_visit(
        h, state, t_grid, method, params,
        [&states](std::size_t i, const JointState& s) { states[i] = s; });
    return {std::move(states), report};
}

}  // namespace spinstar
