#include "tbs/haar.hpp"

#include <bit>
#include <stdexcept>

#include "tbs/state.hpp"

namespace tbs {

namespace {

// Diagonal of e^{igV} on [L][R] with carriers in the low k bits of each side.
Vector coupling_diagonal(int n, int k, double g) {
    const std::uint64_t side = 1ULL << n;
    const std::uint64_t cmask = (1ULL << k) - 1;
    std::vector<Complex> table(k + 1);
    for (int d = 0; d <= k; ++d)
        table[d] = std::exp(Complex(0, g * (k - 2.0 * d) / k));
    Vector diag(side * side);
    for (std::uint64_t l = 0; l < side; ++l)
        for (std::uint64_t r = 0; r < side; ++r)
            diag(l * side + r) = table[std::popcount((l ^ r) & cmask)];
    return diag;
}

} // namespace

SandwichTheory sandwich_theory(int n, int k, double g) {
    if (k < 1 || k > n) throw std::invalid_argument("sandwich_theory: bad carrier count");
    SandwichTheory th;
    th.n = n;
    th.k = k;
    th.g = g;
    const double fourn = std::pow(4.0, n);
    const Complex eig = std::exp(Complex(0, g));
    const double cosk = std::pow(std::cos(g / k), k);
    th.alpha = (cosk - eig / fourn) / (1.0 - 1.0 / fourn);
    th.beta_coef = (eig - cosk) / (1.0 - 1.0 / fourn);
    return th;
}

Matrix phi_plus_projector(int n) {
    Vector phi = phi_plus_state(n);
    return phi * phi.adjoint();
}

Matrix sandwich_sample(const Matrix& u, int n, int k, double g) {
    if (u.rows() != (1LL << n)) throw std::invalid_argument("sandwich_sample: size mismatch");
    Vector diag = coupling_diagonal(n, k, g);
    Matrix left = kron(u.conjugate(), u);
    Matrix right = kron(u.transpose(), u.adjoint());
    return left * diag.asDiagonal() * right;
}

MonteCarloMatrix sandwich_mc(int n, int k, double g, int samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("sandwich_mc: need samples >= 1");
    if (n > 5) throw std::invalid_argument("sandwich_mc: capped at 5 qubits per side");
    const std::uint64_t dim = 1ULL << (2 * n);

    Matrix sum = Matrix::Zero(dim, dim);
    Eigen::MatrixXd sum_re2 = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd sum_im2 = Eigen::MatrixXd::Zero(dim, dim);
    for (int s = 0; s < samples; ++s) {
        Rng rng(hash_combine(seed, static_cast<std::uint64_t>(s)));
        Matrix m = sandwich_sample(haar_unitary(1 << n, rng), n, k, g);
        sum += m;
        sum_re2 += m.real().cwiseProduct(m.real());
        sum_im2 += m.imag().cwiseProduct(m.imag());
    }

    MonteCarloMatrix out;
    out.samples = samples;
    out.mean = sum / static_cast<double>(samples);
    Eigen::MatrixXd var_re =
        (sum_re2 / samples - out.mean.real().cwiseProduct(out.mean.real())).cwiseMax(0.0);
    Eigen::MatrixXd var_im =
        (sum_im2 / samples - out.mean.imag().cwiseProduct(out.mean.imag())).cwiseMax(0.0);
    out.sigma = (var_re.cwiseMax(var_im) / std::max(samples - 1, 1)).cwiseSqrt();
    return out;
}

Matrix projected_coupling(const Matrix& u, int n, int m, double g) {
    if (u.rows() != (1LL << n)) throw std::invalid_argument("projected_coupling: size mismatch");
    const int k = n - m;
    if (k < 1) throw std::invalid_argument("projected_coupling: need at least one carrier");
    const int total = 2 * n;
    const std::uint64_t bdim = 1ULL << k;
    const std::uint64_t adim = 1ULL << m;
    const double bnorm = 1.0 / std::sqrt(static_cast<double>(bdim));

    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= k; ++i) pairs.emplace_back(m + i, n + m + i);

    const Matrix ut = u.transpose();
    const Matrix udag = u.adjoint();
    const Matrix ubar = u.conjugate();

    Matrix s = Matrix(adim * adim, adim * adim);
    for (std::uint64_t al = 0; al < adim; ++al) {
        for (std::uint64_t ar = 0; ar < adim; ++ar) {
            Vector psi = Vector::Zero(1ULL << total);
            for (std::uint64_t b = 0; b < bdim; ++b)
                psi((((al * bdim + b) * adim) + ar) * bdim + b) = bnorm;
            psi = apply_to_range(ut, psi, total, 1, n);
            psi = apply_to_range(udag, psi, total, n + 1, n);
            psi = apply_pair_coupling(psi, total, g, pairs);
            psi = apply_to_range(ubar, psi, total, 1, n);
            psi = apply_to_range(u, psi, total, n + 1, n);
            for (std::uint64_t al2 = 0; al2 < adim; ++al2)
                for (std::uint64_t ar2 = 0; ar2 < adim; ++ar2) {
                    Complex acc = 0;
                    for (std::uint64_t b = 0; b < bdim; ++b)
                        acc += psi((((al2 * bdim + b) * adim) + ar2) * bdim + b);
                    s(al2 * adim + ar2, al * adim + ar) = acc * bnorm;
                }
        }
    }
    return s;
}

Matrix projected_coupling_mean(int n, int m, double g) {
    const int k = n - m;
    const std::uint64_t dim = 1ULL << (2 * m);
    Matrix phi = phi_plus_projector(m);
    const double cosk = std::pow(std::cos(g / k), k);
    return cosk * (Matrix::Identity(dim, dim) - phi) + std::exp(Complex(0, g)) * phi;
}

ConcentrationReport concentration_study(int n, int k, double g, int samples, std::uint64_t seed) {
    const int m = n - k;
    if (m < 1) throw std::invalid_argument("concentration_study: need at least one message qubit");
    Matrix mean = projected_coupling_mean(n, m, g);

    ConcentrationReport rep;
    rep.samples = samples;
    for (int s = 0; s < samples; ++s) {
        Rng rng(hash_combine(seed, static_cast<std::uint64_t>(s)));
        Matrix st = projected_coupling(haar_unitary(1 << n, rng), n, m, g);
        double dev = operator_norm(st - mean);
        rep.deviations.push_back(dev);
        rep.mean_deviation += dev;
        rep.max_deviation = std::max(rep.max_deviation, dev);
    }
    rep.mean_deviation /= std::max(samples, 1);
    return rep;
}

} // namespace tbs
