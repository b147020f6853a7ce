#include "tbs/protocol.hpp"

#include <stdexcept>

#include "tbs/pauli.hpp"
#include "tbs/state.hpp"

namespace tbs {

namespace {

void check_config(const ProtocolConfig& cfg) {
    if (cfg.n < 2 || cfg.m < 1 || cfg.m >= cfg.n)
        throw std::invalid_argument("protocol: need 1 <= m < n");
    if (cfg.t_left < 0 || cfg.t_right < 0)
        throw std::invalid_argument("protocol: negative step counts");
    if (cfg.evolution.n != cfg.n) throw std::invalid_argument("protocol: evolution size mismatch");
}

Matrix y_tensor_power(int m) {
    Matrix y(2, 2);
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    Matrix out = Matrix::Identity(1, 1);
    for (int i = 0; i < m; ++i) out = kron(out, y);
    return out;
}

// Pipeline for one pure insertion chi living on [E][A_L] (e_ref + m qubits).
// Returns the final state on [D(m)][E(e_ref)][L(n)][R(n)].
Vector transfer_pipeline(const ProtocolConfig& cfg, const Vector& tfd_psi, const Vector& chi,
                         int e_ref) {
    const int n = cfg.n, m = cfg.m, k = cfg.carriers();
    const int total = m + e_ref + 2 * n;

    // backward evolution on the left side of the bare TFD
    Vector psi = apply_to_range(side_propagator(cfg.evolution, Side::left, cfg.t_left,
                                                Direction::backward),
                                tfd_psi, 2 * n, 1, n);

    // discard A_L into the dump slot D and tensor the message in
    Vector full(1ULL << total);
    const std::uint64_t chi_dim = 1ULL << (e_ref + m);
    const std::uint64_t rest_dim = 1ULL << (k + n);
    for (std::uint64_t d = 0; d < (1ULL << m); ++d)
        for (std::uint64_t c = 0; c < chi_dim; ++c)
            for (std::uint64_t br = 0; br < rest_dim; ++br)
                full((d * chi_dim + c) * rest_dim + br) = psi(d * rest_dim + br) * chi(c);

    // forward evolution on the left, coupling on carriers, forward on the right
    const int left_first = m + e_ref + 1;
    const int right_first = m + e_ref + n + 1;
    full = apply_to_range(side_propagator(cfg.evolution, Side::left, cfg.t_left), full, total,
                          left_first, n);
    if (cfg.g != 0.0) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 1; i <= k; ++i)
            pairs.emplace_back(left_first + m + i - 1, right_first + m + i - 1);
        full = apply_pair_coupling(full, total, cfg.g, pairs);
    }
    full = apply_to_range(side_propagator(cfg.evolution, Side::right, cfg.t_right), full, total,
                          right_first, n);
    return full;
}

std::vector<int> right_message_sites(const ProtocolConfig& cfg, int e_ref) {
    std::vector<int> sites;
    for (int i = 1; i <= cfg.m; ++i) sites.push_back(cfg.m + e_ref + cfg.n + i);
    return sites;
}

} // namespace

TfdState protocol_tfd(const ProtocolConfig& cfg) {
    if (cfg.beta == 0.0) return bell_pairs(cfg.n);
    if (!cfg.hamiltonian)
        throw std::invalid_argument("protocol: beta > 0 requires a Hamiltonian for the TFD");
    return build_tfd(*cfg.hamiltonian, cfg.beta);
}

ChannelOutput run_state_transfer(const ProtocolConfig& cfg, const Matrix& psi_in) {
    check_config(cfg);
    if (psi_in.rows() != (1LL << cfg.m) || psi_in.cols() != psi_in.rows())
        throw std::invalid_argument("run_state_transfer: psi_in must act on m qubits");

    const TfdState tfd = protocol_tfd(cfg);
    auto eig = eig_hermitian(psi_in, 1e-9);

    Matrix rho_out = Matrix::Zero(1 << cfg.m, 1 << cfg.m);
    for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
        const double p = eig.values(j);
        if (p < 1e-14) continue;
        Vector full = transfer_pipeline(cfg, tfd.psi, eig.vectors.col(j), 0);
        rho_out += p * reduced_density_matrix(full, cfg.m + 2 * cfg.n,
                                              right_message_sites(cfg, 0));
    }
    if (cfg.decode_y) {
        Matrix y = y_tensor_power(cfg.m);
        rho_out = y * rho_out * y;
    }

    ChannelOutput out;
    out.rho_out = rho_out;
    out.diagnostics["trace"] = rho_out.trace().real();
    out.diagnostics["purity"] = (rho_out * rho_out).trace().real();
    out.diagnostics["z1"] = (rho_out * kron(PauliString::from_label("Z").dense(),
                                            Matrix::Identity(1 << (cfg.m - 1), 1 << (cfg.m - 1))))
                                .trace()
                                .real();
    return out;
}

ChannelOutput run_operator_transfer(const ProtocolConfig& cfg, const Matrix& o) {
    check_config(cfg);
    const int n = cfg.n, m = cfg.m, k = cfg.carriers();
    if (o.rows() != (1LL << m) || o.cols() != o.rows())
        throw std::invalid_argument("run_operator_transfer: o must act on m qubits");

    const TfdState tfd = protocol_tfd(cfg);
    Vector psi = apply_to_range(side_propagator(cfg.evolution, Side::left, cfg.t_left,
                                                Direction::backward),
                                tfd.psi, 2 * n, 1, n);
    psi = apply_to_range(o, psi, 2 * n, 1, m);
    psi = apply_to_range(side_propagator(cfg.evolution, Side::left, cfg.t_left), psi, 2 * n, 1, n);
    if (cfg.g != 0.0) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 1; i <= k; ++i) pairs.emplace_back(m + i, n + m + i);
        psi = apply_pair_coupling(psi, 2 * n, cfg.g, pairs);
    }
    psi = apply_to_range(side_propagator(cfg.evolution, Side::right, cfg.t_right), psi, 2 * n,
                         n + 1, n);

    std::vector<int> keep;
    for (int i = 1; i <= m; ++i) keep.push_back(n + i);
    Matrix rho_out = reduced_density_matrix(psi, 2 * n, keep);
    if (cfg.decode_y) {
        Matrix y = y_tensor_power(m);
        rho_out = y * rho_out * y;
    }

    ChannelOutput out;
    out.rho_out = rho_out;
    out.diagnostics["trace"] = rho_out.trace().real();
    Matrix rest = Matrix::Identity(1 << (m - 1), 1 << (m - 1));
    out.diagnostics["z1"] =
        (rho_out * kron(PauliString::from_label("Z").dense(), rest)).trace().real();
    out.diagnostics["x1"] =
        (rho_out * kron(PauliString::from_label("X").dense(), rest)).trace().real();
    return out;
}

Matrix run_kraus_insertion(const ProtocolConfig& cfg, const std::vector<Matrix>& kraus) {
    check_config(cfg);
    const int n = cfg.n, m = cfg.m, k = cfg.carriers();
    const TfdState tfd = protocol_tfd(cfg);

    Vector back = apply_to_range(side_propagator(cfg.evolution, Side::left, cfg.t_left,
                                                 Direction::backward),
                                 tfd.psi, 2 * n, 1, n);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= k; ++i) pairs.emplace_back(m + i, n + m + i);

    std::vector<int> keep;
    for (int i = 1; i <= m; ++i) keep.push_back(n + i);

    Matrix rho_out = Matrix::Zero(1 << m, 1 << m);
    for (const Matrix& e : kraus) {
        Vector psi = apply_to_range(e, back, 2 * n, 1, m);
        psi = apply_to_range(side_propagator(cfg.evolution, Side::left, cfg.t_left), psi, 2 * n, 1,
                             n);
        if (cfg.g != 0.0) psi = apply_pair_coupling(psi, 2 * n, cfg.g, pairs);
        psi = apply_to_range(side_propagator(cfg.evolution, Side::right, cfg.t_right), psi, 2 * n,
                             n + 1, n);
        rho_out += reduced_density_matrix(psi, 2 * n, keep);
    }
    return rho_out;
}

double z_expectation_experiment(const ProtocolConfig& cfg) {
    check_config(cfg);
    const TfdState tfd = protocol_tfd(cfg);
    const int total = cfg.m + 2 * cfg.n;
    const int z_site = cfg.m + cfg.n + 1; // right message qubit 1

    // |0><0| on message qubit 1, maximally mixed on the other message qubits
    const std::uint64_t rest = 1ULL << (cfg.m - 1);
    double acc = 0;
    for (std::uint64_t b = 0; b < rest; ++b) {
        Vector chi = Vector::Zero(1ULL << cfg.m);
        chi(b) = 1.0; // message bit 0, remaining bits = b
        Vector full = transfer_pipeline(cfg, tfd.psi, chi, 0);
        acc += z_expectation(full, total, z_site) / static_cast<double>(rest);
    }
    return acc;
}

double theory_z_expectation(int n, double g) {
    if (n < 2) throw std::invalid_argument("theory_z_expectation: n must be >= 2");
    const double c = std::pow(std::cos(g / (n - 1)), n - 1);
    return c * (-c + std::cos(g)) / 2.0;
}

double theory_z_expectation_finite_time(int n, double g, long t) {
    const long n_eff = std::min<long>(t + 1, n);
    if (n_eff < 2) return 0.0; // no carriers, no signal
    return theory_z_expectation(static_cast<int>(n_eff), g);
}

double entanglement_fidelity(const ProtocolConfig& cfg) {
    check_config(cfg);
    const TfdState tfd = protocol_tfd(cfg);
    const int m = cfg.m;

    Vector chi = phi_plus_state(m); // reference E entangled with the inserted A_L
    Vector full = transfer_pipeline(cfg, tfd.psi, chi, m);

    std::vector<int> keep;
    for (int i = 1; i <= m; ++i) keep.push_back(m + i); // E
    for (int s : right_message_sites(cfg, m)) keep.push_back(s);
    Matrix rho = reduced_density_matrix(full, 2 * m + 2 * cfg.n, keep);

    Matrix decode = kron(Matrix::Identity(1 << m, 1 << m), y_tensor_power(m));
    rho = decode * rho * decode.adjoint();

    Vector phi = phi_plus_state(m);
    const double overlap = std::max(0.0, (phi.adjoint() * rho * phi)(0).real());
    return std::sqrt(overlap);
}

} // namespace tbs
