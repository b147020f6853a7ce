#pragma once

#include "tbs/protocol.hpp"

namespace tbs {

/// Pauli-basis expansion A = 2^{-n/2} sum_P c_P P, c_P = 2^{-n/2} tr(P A),
/// indexed by the symplectic index (p << n) | q. Capped at n <= 8.
struct OperatorWavefunction {
    int n = 0;
    std::vector<Complex> coeffs;
    double norm_sq = 0.0; // sum |c_P|^2 = ||A||_F^2
};

OperatorWavefunction pauli_decompose(const Matrix& a);
Matrix pauli_reconstruct(const OperatorWavefunction& w);

/// q(l) = sum_{|P|=l} c_P^2 (squares, not squared moduli) plus the
/// conventional distribution sum_{|P|=l} |c_P|^2.
struct WindingSizeDistribution {
    std::vector<Complex> winding;      // length n+1
    std::vector<double> conventional;  // length n+1
};

WindingSizeDistribution winding_distribution(const OperatorWavefunction& w);

/// Size-uniform twist: c_P -> e^{i g (1 - (4/3)|P|/n)} c_P.
OperatorWavefunction twist_uniform(const OperatorWavefunction& w, double g);

/// Exact coupling action in coefficient space:
/// c_P -> e^{i g (1 - 2 |P|_X^B / k)} c_P with B the carrier sites.
OperatorWavefunction twist_xb(const OperatorWavefunction& w, double g, std::uint64_t carrier_mask);

/// (lhs, rhs) of the twist-difference bound: lhs = ||twist_xb - twist_uniform||_F,
/// rhs = (4/3) g sqrt(1/(2k) + (m/n)^2) ||w||_F. The bound is guaranteed only
/// when |c_P|^2 depends on the support of P alone.
std::pair<double, double> twist_difference_bound(const OperatorWavefunction& w, double g, int m,
                                                 int k);

/// Relative L1 deviation of |c_P|^2 from its same-support mean (0 = the
/// support-uniformity hypothesis holds exactly).
double support_uniformity_violation(const OperatorWavefunction& w);

/// q~(g) = sum_l q(l) e^{-i (4g/3) l / n}.
Complex fourier_winding(const WindingSizeDistribution& q, double g, int n);

/// sum_P c_P(a) c_P(b) = tr(A B), no conjugation.
Complex pair_trace(const OperatorWavefunction& a, const OperatorWavefunction& b);

/// Thermal operator in right-side convention: rho_beta^{1/2} O(t) with
/// O(t) = U^dag O U, U the right-side t-step propagator, and rho^{1/2} the
/// transpose of the left-basis thermal square root.
Matrix thermal_operator(const Evolution& ev, const Matrix& sqrt_thermal, const Matrix& o, long t);

/// Embed an m-qubit message operator into the leading sites of one side.
Matrix embed_message_operator(const Matrix& o, int n, int m);

/// <TFD| O_R(t_R) e^{igV} O_L^T(-t_L) |TFD> by direct contraction. o may act
/// on m qubits (embedded) or on the whole side.
Complex two_point_function(const ProtocolConfig& cfg, const Matrix& o);

/// N_l = binom(m, l) 3^l, the number of size-l Paulis on m qubits.
double pauli_size_class_count(int m, int l);

struct FidelityReport {
    double f_q = 0;         // |sum_l (N_l/4^m) (-1)^l q~_l(g)|
    double f_exact = 0;     // Frobenius-norm channel fidelity formula
    double upper_1 = 0;     // F_q + sum (N_l/4^m) sqrt(1 - |q~_l|^2)
    double upper_2 = 0;     // 1 - 4^{-m} (1 - F_q)
    double lower_exact = 0; // Cauchy-Schwarz bound with exact coupling phases
    double epsilon = 0;     // twist-difference error term
    std::vector<Complex> q_tilde;      // l = 0..m
    double hypothesis_violation = 0;   // mean support-uniformity deviation
};

/// Exact enumeration over all Paulis on the message subsystem (m <= 3).
/// Uses t = cfg.t_left = cfg.t_right.
FidelityReport compute_fq(const ProtocolConfig& cfg);

/// Worked-example value in the scrambled large-n limit, where q~_0 = 1 and
/// q~_l = e^{-ig} for l >= 1.
double fq_late_time_haar(int m, double g);

struct PhaseLinearity {
    double slope = 0;
    double rms_residual = 0;
};

/// Weighted linear regression of arg q(l) against l (diagnostic only).
PhaseLinearity winding_phase_linearity(const WindingSizeDistribution& q);

} // namespace tbs
