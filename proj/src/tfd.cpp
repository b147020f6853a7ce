#include "tbs/tfd.hpp"

#include <stdexcept>

#include "tbs/state.hpp"

namespace tbs {

Matrix thermal_sqrt(const Matrix& h, double beta) {
    if (beta < 0) throw std::invalid_argument("thermal_sqrt: beta must be >= 0");
    auto eig = eig_hermitian(h);
    // shift by the ground energy before exponentiating
    const double e0 = eig.values.minCoeff();
    Eigen::VectorXd w(eig.values.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = std::exp(-beta * (eig.values(i) - e0) / 2);
    w /= w.norm(); // sum w^2 = tr(rho) = 1
    return eig.vectors * w.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

TfdState build_tfd(const Matrix& h, double beta) {
    int n = 0;
    while ((1LL << n) < h.rows()) ++n;
    if ((1LL << n) != h.rows()) throw std::invalid_argument("build_tfd: dim not 2^n");

    TfdState tfd;
    tfd.n = n;
    tfd.beta = beta;
    tfd.sqrt_thermal = thermal_sqrt(h, beta);
    tfd.psi = from_matrix(tfd.sqrt_thermal);
    return tfd;
}

TfdState bell_pairs(int n) {
    TfdState tfd;
    tfd.n = n;
    tfd.beta = 0.0;
    tfd.psi = phi_plus_state(n);
    tfd.sqrt_thermal =
        Matrix::Identity(1 << n, 1 << n) / std::sqrt(static_cast<double>(1ULL << n));
    return tfd;
}

} // namespace tbs
