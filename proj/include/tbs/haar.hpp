#pragma once

#include "tbs/linalg.hpp"

namespace tbs {

/// Closed-form coefficients of the Haar-averaged sandwiched coupling
/// E_U (Ubar x U) e^{igV} (U^T x U^dag) = alpha I + beta phi+, fixed by the
/// trace conditions 4^n alpha + beta = 4^n cos(g/k)^k and alpha + beta = e^{ig}.
struct SandwichTheory {
    int n = 0;
    int k = 0;
    double g = 0;
    Complex alpha;
    Complex beta_coef;
};

SandwichTheory sandwich_theory(int n, int k, double g);

/// Projector onto the full maximally entangled state between the two sides
/// (pairing site i with site n+i).
Matrix phi_plus_projector(int n);

/// One sandwiched-coupling sample (Ubar x U) e^{igV} (U^T x U^dag) as a dense
/// 4^n operator. Carriers are the last k sites of each side.
Matrix sandwich_sample(const Matrix& u, int n, int k, double g);

struct MonteCarloMatrix {
    Matrix mean;
    Eigen::MatrixXd sigma; // elementwise std of the mean (max over re/im)
    int samples = 0;
};

MonteCarloMatrix sandwich_mc(int n, int k, double g, int samples, std::uint64_t seed);

/// S~ = <phi+|_{B_L B_R} (Ubar x U) e^{igV} (U^T x U^dag) |phi+>_{B_L B_R},
/// a 4^m-dimensional operator on the message pair.
Matrix projected_coupling(const Matrix& u, int n, int m, double g);

/// Theory mean of S~: cos(g/k)^k (I - phi+) + e^{ig} phi+ on 2m qubits.
Matrix projected_coupling_mean(int n, int m, double g);

struct ConcentrationReport {
    int samples = 0;
    double mean_deviation = 0; // operator norm, against the theory mean
    double max_deviation = 0;
    std::vector<double> deviations;
};

ConcentrationReport concentration_study(int n, int k, double g, int samples, std::uint64_t seed);

} // namespace tbs
