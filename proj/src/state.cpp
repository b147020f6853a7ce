#include "tbs/state.hpp"

#include <bit>
#include <stdexcept>

namespace tbs {

Vector apply_to_range(const Matrix& u, const Vector& psi, int n_qubits, int first_site, int count) {
    const std::uint64_t dim = 1ULL << n_qubits;
    const std::uint64_t gdim = 1ULL << count;
    if (psi.size() != static_cast<Eigen::Index>(dim))
        throw std::invalid_argument("apply_to_range: state dimension mismatch");
    if (u.rows() != static_cast<Eigen::Index>(gdim) || u.cols() != u.rows())
        throw std::invalid_argument("apply_to_range: operator dimension mismatch");
    if (first_site < 1 || first_site + count - 1 > n_qubits)
        throw std::invalid_argument("apply_to_range: sites out of range");

    const std::uint64_t inner = 1ULL << (n_qubits - (first_site + count - 1));
    const std::uint64_t outer = dim / (gdim * inner);

    Vector out(dim);
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    for (std::uint64_t a = 0; a < outer; ++a) {
        Eigen::Map<const RowMajor> block(psi.data() + a * gdim * inner, gdim, inner);
        Eigen::Map<RowMajor> dst(out.data() + a * gdim * inner, gdim, inner);
        dst = u * block;
    }
    return out;
}

Vector apply_pair_coupling(const Vector& psi, int n_qubits, double g,
                           const std::vector<std::pair<int, int>>& site_pairs) {
    const std::uint64_t dim = 1ULL << n_qubits;
    if (psi.size() != static_cast<Eigen::Index>(dim))
        throw std::invalid_argument("apply_pair_coupling: dimension mismatch");
    const int k = static_cast<int>(site_pairs.size());
    if (k < 1) throw std::invalid_argument("apply_pair_coupling: need at least one pair");

    std::vector<std::pair<int, int>> shifts;
    shifts.reserve(k);
    for (auto [a, b] : site_pairs) {
        if (a < 1 || a > n_qubits || b < 1 || b > n_qubits)
            throw std::invalid_argument("apply_pair_coupling: site out of range");
        shifts.emplace_back(n_qubits - a, n_qubits - b);
    }
    // phase = e^{i g (k - 2 * disagreements) / k}
    std::vector<Complex> table(k + 1);
    for (int d = 0; d <= k; ++d)
        table[d] = std::exp(Complex(0, g * (k - 2 * d) / static_cast<double>(k)));

    Vector out(dim);
    for (std::uint64_t x = 0; x < dim; ++x) {
        int d = 0;
        for (auto [sa, sb] : shifts) d += static_cast<int>(((x >> sa) ^ (x >> sb)) & 1);
        out(x) = psi(x) * table[d];
    }
    return out;
}

Matrix reduced_density_matrix(const Vector& psi, int n_qubits, const std::vector<int>& keep) {
    const std::uint64_t dim = 1ULL << n_qubits;
    if (psi.size() != static_cast<Eigen::Index>(dim))
        throw std::invalid_argument("reduced_density_matrix: dimension mismatch");
    std::vector<int> keep_sorted = keep;
    std::sort(keep_sorted.begin(), keep_sorted.end());
    const int nk = static_cast<int>(keep_sorted.size());
    const std::uint64_t kdim = 1ULL << nk;
    const std::uint64_t rdim = dim >> nk;

    Matrix m = Matrix::Zero(kdim, rdim);
    for (std::uint64_t x = 0; x < dim; ++x) {
        std::uint64_t ki = 0, ri = 0;
        int kpos = 0;
        for (int s = 1; s <= n_qubits; ++s) {
            std::uint64_t bit = (x >> (n_qubits - s)) & 1;
            if (kpos < nk && keep_sorted[kpos] == s) {
                ki = (ki << 1) | bit;
                ++kpos;
            } else {
                ri = (ri << 1) | bit;
            }
        }
        m(ki, ri) += psi(x);
    }
    return m * m.adjoint();
}

double z_expectation(const Vector& psi, int n_qubits, int site) {
    if (site < 1 || site > n_qubits) throw std::invalid_argument("z_expectation: site out of range");
    const int shift = n_qubits - site;
    double acc = 0;
    for (Eigen::Index x = 0; x < psi.size(); ++x) {
        double w = std::norm(psi(x));
        acc += ((x >> shift) & 1) ? -w : w;
    }
    return acc;
}

Vector tensor(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

Vector permute_sites(const Vector& psi, int n_qubits, const std::vector<int>& new_from_old) {
    const std::uint64_t dim = 1ULL << n_qubits;
    if (psi.size() != static_cast<Eigen::Index>(dim) ||
        new_from_old.size() != static_cast<std::size_t>(n_qubits))
        throw std::invalid_argument("permute_sites: dimension mismatch");
    Vector out(dim);
    for (std::uint64_t x = 0; x < dim; ++x) {
        std::uint64_t y = 0;
        for (int s = 1; s <= n_qubits; ++s) {
            std::uint64_t bit = (x >> (n_qubits - new_from_old[s - 1])) & 1;
            y |= bit << (n_qubits - s);
        }
        out(y) = psi(x);
    }
    return out;
}

Matrix as_matrix(const Vector& psi, int n_left, int n_right) {
    const Eigen::Index rows = 1LL << n_left, cols = 1LL << n_right;
    if (psi.size() != rows * cols) throw std::invalid_argument("as_matrix: dimension mismatch");
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    return Eigen::Map<const RowMajor>(psi.data(), rows, cols);
}

Vector from_matrix(const Matrix& m) {
    Vector out(m.rows() * m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i * m.cols() + j) = m(i, j);
    return out;
}

Vector phi_plus_state(int n_pairs) {
    const std::uint64_t side = 1ULL << n_pairs;
    Vector psi = Vector::Zero(side * side);
    const double amp = 1.0 / std::sqrt(static_cast<double>(side));
    for (std::uint64_t l = 0; l < side; ++l) psi(l * side + l) = amp;
    return psi;
}

} // namespace tbs
