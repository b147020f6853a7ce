#pragma once

#include <map>
#include <string>

#include "tbs/models.hpp"
#include "tbs/tfd.hpp"

namespace tbs {

/// One two-sided transfer run: n qubits per side, the first m of each side
/// are the message subsystem, the remaining k = n - m carry the coupling
/// exp(i g V) with V = (1/k) sum_carriers Z_i^L Z_i^R.
struct ProtocolConfig {
    int n = 0;
    int m = 1;
    double g = 0.0;
    long t_left = 0;
    long t_right = 0;
    double beta = 0.0;
    Evolution evolution;
    bool decode_y = false;
    std::optional<Matrix> hamiltonian; // required when beta > 0

    int carriers() const { return n - m; }
};

struct ChannelOutput {
    Matrix rho_out; // on A_R (m qubits)
    std::map<std::string, double> diagnostics;
};

/// Fig-style state transfer: prepare the TFD, evolve the left side backward,
/// discard A_L and insert psi_in, evolve the left side forward, couple the
/// carriers, evolve the right side forward, reduce to A_R.
ChannelOutput run_state_transfer(const ProtocolConfig& cfg, const Matrix& psi_in);

/// Same pipeline, but the insertion applies the operator o to A_L at time
/// -t_left instead of replacing the subsystem.
ChannelOutput run_operator_transfer(const ProtocolConfig& cfg, const Matrix& o);

/// General encoder: a channel given by Kraus operators acts on A_L at time
/// -t_left; returns the averaged output state on A_R.
Matrix run_kraus_insertion(const ProtocolConfig& cfg, const std::vector<Matrix>& kraus);

/// Inject the Z=+1 state on left message qubit 1, no decoding, and return
/// <Z_1R> after the run.
double z_expectation_experiment(const ProtocolConfig& cfg);

/// Late-time closed form (cos(g/(n-1)))^{n-1} (-(cos(g/(n-1)))^{n-1} + cos g)/2.
double theory_z_expectation(int n, double g);

/// Finite-time heuristic: the closed form with n -> min(t+1, n).
double theory_z_expectation_finite_time(int n, double g, long t);

/// sqrt(<phi+| C(phi+) |phi+>) for the state-transfer channel composed with
/// the Y^{x m} decoder, run on half of a maximally entangled reference pair.
double entanglement_fidelity(const ProtocolConfig& cfg);

/// TFD used by a run: Bell pairs at beta = 0, else built from cfg.hamiltonian.
TfdState protocol_tfd(const ProtocolConfig& cfg);

} // namespace tbs
