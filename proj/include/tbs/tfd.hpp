#pragma once

#include "tbs/linalg.hpp"

namespace tbs {

/// Thermofield double over two copies (2n qubits, left side in the high
/// bits, left site i paired with right site i). With eigenvectors conjugated
/// on the right factor, the amplitude matrix psi(l, r) equals rho_beta^{1/2}
/// in the computational basis, so the reduced state on L is rho_beta and
/// (H x I - I x conj(H)) annihilates the state.
struct TfdState {
    int n = 0;
    double beta = 0.0;
    Vector psi;          // 2n qubits
    Matrix sqrt_thermal; // rho_beta^{1/2}, Hermitian, tr(rho) = 1
};

TfdState build_tfd(const Matrix& h, double beta);

/// beta = 0 fast path: |phi+> on every (i_L, i_R) pair.
TfdState bell_pairs(int n);

/// rho_beta^{1/2} = e^{-beta H/2} / sqrt(tr e^{-beta H}).
Matrix thermal_sqrt(const Matrix& h, double beta);

} // namespace tbs
