#pragma once

#include "tbs/linalg.hpp"

namespace tbs {

struct KrausChannel {
    int dim = 0;
    std::vector<Matrix> kraus;
};

/// Throws unless sum E_i^dag E_i = I within 1e-9.
void check_kraus(const KrausChannel& ch);

Matrix apply_channel(const KrausChannel& ch, const Matrix& rho);

/// Unitary on 2m qubits, diagonal in the Pauli-state basis |P> = P_R |phi+>:
/// S |P> = e^{i g' |P|} |P>.
Matrix size_phase_unitary(int m, double g_prime);

/// tr_{A_L}[ S (psi_in x tau) S^dag ] computed densely AND by the closed form
/// Y^{x m} Delta_lambda^{x m}(psi_in) Y^{x m}, lambda = (1 - cos g')/2; the
/// two must agree within 1e-10 or this throws.
Matrix teleport_by_size_channel(const Matrix& psi_in, double g_prime);

/// Tensor power of the single-qubit depolarizing channel
/// Delta_lambda(rho) = (1 - lambda) tau + lambda rho.
Matrix depolarize_tensor_power(const Matrix& rho, double lambda);

/// rho -> tau + alpha (tau - rho^T).
Matrix transpose_depolarizing(const Matrix& rho, double alpha);

Matrix choi_transpose_depolarizing(int d, double alpha);

/// Decided from the minimum Choi eigenvalue; the analytic window
/// -1/(d+1) <= alpha <= 1/(d-1) serves as the oracle in tests.
bool is_completely_positive(double alpha, int d, double* min_choi_eig = nullptr);

/// Q = tr_{A_L}[ N(phi+) phi+ ], the response operator of a generic encoder.
Matrix q_operator(const KrausChannel& ch);
/// Same via Q = sum_i E_i^T tr(E_i^dag) / d^2.
Matrix q_operator_kraus(const KrausChannel& ch);

/// Haar-averaged output on A_R for a generic encoder applied at time -t:
/// tau + [ w (Q - tr[Q] tau) + h.c. ] with w = c (e^{-ig} - c) and
/// c = cos(g/k)^k for k carriers. carriers = 0 selects the scrambled limit
/// c = 1 (valid for g^2 << k), where w = e^{-ig} - 1. Throws if the two Q
/// routes disagree beyond 1e-10.
Matrix generic_channel_output(const KrausChannel& ch, double g, int carriers = 0);

struct MixednessReport {
    double max_eig = 0;
    double tight_bound = 0; // 3 (1 + (1 - cos g) <phi+|N(phi+)|phi+>) / d
    double loose_bound = 0; // 9/d
    bool ok = false;
};

MixednessReport mixedness_bound_check(const Matrix& rho_out, double g, const KrausChannel& ch);

struct Ensemble {
    std::vector<double> probs;
    std::vector<Matrix> states;
};

double vn_entropy_bits(const Matrix& rho);
/// chi = S(sum p_i rho_i) - sum p_i S(rho_i), base-2 logarithms.
double holevo(const Ensemble& e);

/// Random channel with the given number of Kraus operators, via a Haar
/// unitary on system x environment.
KrausChannel random_channel(int dim, int n_kraus, Rng& rng);

} // namespace tbs
