#include "tbs/channel.hpp"

#include <bit>
#include <stdexcept>

#include "tbs/pauli.hpp"
#include "tbs/state.hpp"

namespace tbs {

namespace {

int qubits_of(Eigen::Index dim) {
    int n = 0;
    while ((1LL << n) < dim) ++n;
    if ((1LL << n) != dim) throw std::invalid_argument("dimension is not 2^n");
    return n;
}

Matrix y_tensor_power(int m) {
    Matrix y(2, 2);
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    Matrix out = Matrix::Identity(1, 1);
    for (int i = 0; i < m; ++i) out = kron(out, y);
    return out;
}

} // namespace

void check_kraus(const KrausChannel& ch) {
    if (ch.kraus.empty()) throw std::invalid_argument("KrausChannel: no operators");
    Matrix acc = Matrix::Zero(ch.dim, ch.dim);
    for (const Matrix& e : ch.kraus) {
        if (e.rows() != ch.dim || e.cols() != ch.dim)
            throw std::invalid_argument("KrausChannel: operator dimension mismatch");
        acc += e.adjoint() * e;
    }
    if ((acc - Matrix::Identity(ch.dim, ch.dim)).cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument("KrausChannel: not trace preserving");
}

Matrix apply_channel(const KrausChannel& ch, const Matrix& rho) {
    Matrix out = Matrix::Zero(ch.dim, ch.dim);
    for (const Matrix& e : ch.kraus) out += e * rho * e.adjoint();
    return out;
}

Matrix size_phase_unitary(int m, double g_prime) {
    if (m < 1 || m > 6) throw std::invalid_argument("size_phase_unitary: m out of range");
    const std::uint64_t side = 1ULL << m;
    const std::uint64_t dim = side * side;
    Matrix s = Matrix::Zero(dim, dim);
    for (std::uint64_t p = 0; p < side; ++p) {
        for (std::uint64_t q = 0; q < side; ++q) {
            PauliString pauli = PauliString::from_bits(m, p, q);
            // |P> = P_R |phi+>, i.e. the vectorized P^T / 2^{m/2}
            Vector ket = from_matrix(pauli.dense().transpose() /
                                     std::sqrt(static_cast<double>(side)));
            s += std::exp(Complex(0, g_prime * pauli.size())) * ket * ket.adjoint();
        }
    }
    return s;
}

Matrix depolarize_tensor_power(const Matrix& rho, double lambda) {
    const int m = qubits_of(rho.rows());
    // Delta_lambda = lambda id + (1 - lambda) full depolarization, applied
    // site by site via the Pauli twirl (rho + XrhoX + YrhoY + ZrhoZ)/4 = tau tr(rho).
    const double w_id = lambda + (1.0 - lambda) / 4.0;
    const double w_pauli = (1.0 - lambda) / 4.0;
    Matrix out = rho;
    for (int site = 1; site <= m; ++site) {
        Matrix acc = w_id * out;
        for (char c : {'X', 'Y', 'Z'}) {
            std::string label(m, 'I');
            label[site - 1] = c;
            Matrix p = PauliString::from_label(label).dense();
            acc += w_pauli * (p * out * p);
        }
        out = acc;
    }
    return out;
}

Matrix teleport_by_size_channel(const Matrix& psi_in, double g_prime) {
    const int m = qubits_of(psi_in.rows());
    const std::uint64_t side = 1ULL << m;

    // dense route: A_L in the high bits, tau on A_R
    Matrix s = size_phase_unitary(m, g_prime);
    Matrix tau = Matrix::Identity(side, side) / static_cast<double>(side);
    Matrix joint = s * kron(psi_in, tau) * s.adjoint();
    std::vector<int> keep;
    for (int i = 1; i <= m; ++i) keep.push_back(m + i);
    Matrix dense_route = partial_trace(joint, 2 * m, keep);

    // closed form
    const double lambda = (1.0 - std::cos(g_prime)) / 2.0;
    Matrix y = y_tensor_power(m);
    Matrix closed = y * depolarize_tensor_power(psi_in, lambda) * y;

    if ((dense_route - closed).cwiseAbs().maxCoeff() > 1e-10)
        throw std::runtime_error("teleport_by_size_channel: dense route disagrees with closed form");
    return closed;
}

Matrix transpose_depolarizing(const Matrix& rho, double alpha) {
    // linear extension: X -> tr(X) tau + alpha (tr(X) tau - X^T)
    const double d = static_cast<double>(rho.rows());
    Matrix tau = Matrix::Identity(rho.rows(), rho.rows()) / d;
    return rho.trace() * tau + alpha * (tau * rho.trace() - rho.transpose());
}

Matrix choi_transpose_depolarizing(int d, double alpha) {
    Matrix choi = Matrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            Matrix eij = Matrix::Zero(d, d);
            eij(i, j) = 1.0;
            Matrix mapped = transpose_depolarizing(eij, alpha);
            choi.block(i * d, j * d, d, d) = mapped;
        }
    }
    return choi;
}

bool is_completely_positive(double alpha, int d, double* min_choi_eig) {
    const double lambda_min = min_eigenvalue(choi_transpose_depolarizing(d, alpha));
    if (min_choi_eig) *min_choi_eig = lambda_min;
    return lambda_min >= -1e-10;
}

Matrix q_operator(const KrausChannel& ch) {
    const int m = qubits_of(ch.dim);
    const std::uint64_t side = 1ULL << m;
    Vector phi = phi_plus_state(m);
    Matrix phi_proj = phi * phi.adjoint();
    // channel on the A_L (high-bit) factor of phi+
    Matrix n_phi = Matrix::Zero(side * side, side * side);
    for (const Matrix& e : ch.kraus) {
        Matrix big = kron(e, Matrix::Identity(side, side));
        n_phi += big * phi_proj * big.adjoint();
    }
    std::vector<int> keep;
    for (int i = 1; i <= m; ++i) keep.push_back(m + i);
    return partial_trace(n_phi * phi_proj, 2 * m, keep);
}

Matrix q_operator_kraus(const KrausChannel& ch) {
    const double d2 = static_cast<double>(ch.dim) * ch.dim;
    Matrix q = Matrix::Zero(ch.dim, ch.dim);
    for (const Matrix& e : ch.kraus) q += e.transpose() * std::conj(e.trace()) / d2;
    return q;
}

Matrix generic_channel_output(const KrausChannel& ch, double g, int carriers) {
    check_kraus(ch);
    Matrix q = q_operator(ch);
    Matrix q2 = q_operator_kraus(ch);
    if ((q - q2).cwiseAbs().maxCoeff() > 1e-10)
        throw std::runtime_error("generic_channel_output: Q routes disagree");

    const double d = static_cast<double>(ch.dim);
    Matrix tau = Matrix::Identity(ch.dim, ch.dim) / d;
    const double c = (carriers > 0) ? std::pow(std::cos(g / carriers), carriers) : 1.0;
    const Complex w = c * (std::exp(Complex(0, -g)) - c);
    Matrix signal = w * (q - q.trace() * tau);
    return tau + signal + signal.adjoint();
}

MixednessReport mixedness_bound_check(const Matrix& rho_out, double g, const KrausChannel& ch) {
    const int m = qubits_of(ch.dim);
    const double d = static_cast<double>(ch.dim);
    Vector phi = phi_plus_state(m);
    Matrix n_phi = Matrix::Zero(ch.dim * ch.dim, ch.dim * ch.dim);
    for (const Matrix& e : ch.kraus) {
        Matrix big = kron(e, Matrix::Identity(ch.dim, ch.dim));
        n_phi += big * (phi * phi.adjoint()) * big.adjoint();
    }
    const double overlap = (phi.adjoint() * n_phi * phi)(0).real();

    MixednessReport rep;
    Eigen::SelfAdjointEigenSolver<Matrix> solver((rho_out + rho_out.adjoint()) / 2.0);
    rep.max_eig = solver.eigenvalues().maxCoeff();
    rep.tight_bound = 3.0 * (1.0 + (1.0 - std::cos(g)) * overlap) / d;
    rep.loose_bound = 9.0 / d;
    rep.ok = rep.max_eig <= rep.tight_bound + 1e-9 && rep.max_eig <= rep.loose_bound + 1e-9;
    return rep;
}

double vn_entropy_bits(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver((rho + rho.adjoint()) / 2.0);
    double s = 0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        double p = solver.eigenvalues()(i);
        if (p > 1e-15) s -= p * std::log2(p);
    }
    return s;
}

double holevo(const Ensemble& e) {
    if (e.probs.size() != e.states.size() || e.probs.empty())
        throw std::invalid_argument("holevo: malformed ensemble");
    double psum = 0;
    for (double p : e.probs) {
        if (p < 0) throw std::invalid_argument("holevo: negative probability");
        psum += p;
    }
    if (std::abs(psum - 1.0) > 1e-12) throw std::invalid_argument("holevo: probabilities must sum to 1");

    Matrix avg = Matrix::Zero(e.states[0].rows(), e.states[0].cols());
    double mean_entropy = 0;
    for (std::size_t i = 0; i < e.probs.size(); ++i) {
        avg += e.probs[i] * e.states[i];
        mean_entropy += e.probs[i] * vn_entropy_bits(e.states[i]);
    }
    return std::max(0.0, vn_entropy_bits(avg) - mean_entropy);
}

KrausChannel random_channel(int dim, int n_kraus, Rng& rng) {
    Matrix u = haar_unitary(dim * n_kraus, rng);
    KrausChannel ch;
    ch.dim = dim;
    // E_i = (<i|_env x I) U (|0>_env x I), environment in the high bits
    for (int i = 0; i < n_kraus; ++i)
        ch.kraus.push_back(u.block(i * dim, 0, dim, dim));
    check_kraus(ch);
    return ch;
}

} // namespace tbs
