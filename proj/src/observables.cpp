#include "spinstar/observables.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace spinstar {

namespace {

// sigma^y x sigma^y in the |00>,|01>,|10>,|11> ordering
const Eigen::Matrix4cd kSpinFlip = [] {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
}();

int qubit1_of(int q) { return (q >> 1) & 1; }
int qubit2_of(int q) { return q & 1; }
int pack(int q1, int q2) { return (q1 << 1) | q2; }

}  // namespace

double purity(const ReducedDensityMatrix& rho) {
    return (rho.mat * rho.mat).trace().real();
}

double sz_total(const ReducedDensityMatrix& rho) {
    double acc = 0.0;  // operator diag(-1, 0, 0, +1)
    for (int q = 0; q < kQubitDim; ++q)
        acc += rho.mat(q, q).real() * sz_eigenvalue(q);
    return acc;
}

double concurrence(const ReducedDensityMatrix& rho) {
    const Eigen::Matrix4cd flipped = kSpinFlip * rho.mat.conjugate() * kSpinFlip;
    const Eigen::Matrix4cd product = rho.mat * flipped;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(product, false);
    std::array<double, 4> lambda{};
    for (int i = 0; i < 4; ++i) {
        double v = es.eigenvalues()[i].real();
        if (v < 0.0) {
            if (v < -1e-12)
                throw std::invalid_argument("concurrence: product matrix eigenvalue < -1e-12");
            v = 0.0;
        }
        lambda[i] = std::sqrt(v);
    }
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

PptResult ppt_spectrum(const ReducedDensityMatrix& rho, int which_qubit) {
    if (which_qubit != 1 && which_qubit != 2)
        throw std::invalid_argument("ppt_spectrum: qubit index must be 1 or 2");
    Eigen::Matrix4cd pt;
    for (int a = 0; a < kQubitDim; ++a) {
        for (int b = 0; b < kQubitDim; ++b) {
            int ra = a, cb = b;
            if (which_qubit == 1) {
                ra = pack(qubit1_of(b), qubit2_of(a));
                cb = pack(qubit1_of(a), qubit2_of(b));
            } else {
                ra = pack(qubit1_of(a), qubit2_of(b));
                cb = pack(qubit1_of(b), qubit2_of(a));
            }
            pt(a, b) = rho.mat(ra, cb);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(pt, Eigen::EigenvaluesOnly);
    PptResult res;
    Eigen::Vector4d ev = es.eigenvalues();
    std::sort(ev.data(), ev.data() + 4, std::greater<>());
    res.spectrum = ev;
    res.negativity = 0.0;
    for (int i = 0; i < 4; ++i)
        if (ev[i] < 0.0) res.negativity += -ev[i];
    res.entangled = ev[3] < -1e-10;
    return res;
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    double entropy = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double p = es.eigenvalues()[i];
        if (p < -1e-10)
            throw std::invalid_argument("von_neumann_entropy: matrix is not PSD");
        if (p <= 0.0) continue;
        entropy -= p * std::log2(p);
    }
    return entropy;
}

Eigen::Matrix2cd one_qubit_marginal(const ReducedDensityMatrix& rho, int keep) {
    if (keep != 1 && keep != 2)
        throw std::invalid_argument("one_qubit_marginal: qubit index must be 1 or 2");
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                if (keep == 1)
                    m(a, b) += rho.mat(pack(a, c), pack(b, c));
                else
                    m(a, b) += rho.mat(pack(c, a), pack(c, b));
            }
    return m;
}

ObservableRecord observe(double t, const ReducedDensityMatrix& rho) {
    ObservableRecord rec;
    rec.t = t;
    rec.purity = purity(rho);
    rec.sz_total = sz_total(rho);
    rec.entropy_two_qubit = von_neumann_entropy(rho.mat);
    rec.entropy_one_qubit = von_neumann_entropy(one_qubit_marginal(rho, 1));
    rec.concurrence = concurrence(rho);
    const PptResult ppt = ppt_spectrum(rho, 1);
    rec.ppt_min_eig = ppt.spectrum[3];
    rec.negativity = ppt.negativity;
    rec.raw_trace = rho.raw_trace;
    return rec;
}

}  // namespace spinstar
