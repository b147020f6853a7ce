#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "tbs/rng.hpp"

namespace tbs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Global tolerance ladder. Exactness-class checks 1e-10, eigendecomposition
// residuals 1e-9, Monte-Carlo comparisons 3 sigma.
constexpr double kExactTol = 1e-10;
constexpr double kEigTol = 1e-9;

Matrix kron(const Matrix& a, const Matrix& b);

bool is_hermitian(const Matrix& m, double tol = kExactTol);
bool is_unitary(const Matrix& m, double tol = kExactTol);

struct HermitianEig {
    Eigen::VectorXd values; // ascending
    Matrix vectors;         // columns
};

/// Throws std::invalid_argument if h is not Hermitian within tol.
HermitianEig eig_hermitian(const Matrix& h, double tol = kExactTol);

/// V f(lambda) V^dag; provides e^{-iHt}, e^{-beta H/2}, rho^{1/2}, ...
Matrix matfn_hermitian(const Matrix& h, const std::function<Complex(double)>& f);

/// u^t for integer t >= 0 by repeated multiplication.
Matrix matrix_power(const Matrix& u, long t);

/// Trace out the sites not listed in keep (1-based, site 1 = MSB). The kept
/// sites appear in ascending site order in the reduced index.
Matrix partial_trace(const Matrix& rho, int n_qubits, const std::vector<int>& keep);

double operator_norm(const Matrix& m); // largest singular value
double trace_norm(const Matrix& m);

/// Haar-distributed unitary: complex Ginibre, QR, phase correction.
Matrix haar_unitary(int dim, Rng& rng);

Matrix random_hermitian(int dim, Rng& rng);
Vector random_state(int dim, Rng& rng);
Matrix random_density_matrix(int dim, Rng& rng, int rank = 0); // rank 0 = full

/// Hermitian within 1e-10, trace 1 within 1e-10, eigenvalues >= -1e-9;
/// throws std::invalid_argument otherwise.
void check_density_matrix(const Matrix& rho);

double min_eigenvalue(const Matrix& hermitian);

} // namespace tbs
