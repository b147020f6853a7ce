#include "tbs/linalg.hpp"

#include <stdexcept>

namespace tbs {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

bool is_hermitian(const Matrix& m, double tol) {
    return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    Matrix d = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
    return d.cwiseAbs().maxCoeff() <= tol;
}

HermitianEig eig_hermitian(const Matrix& h, double tol) {
    if (!is_hermitian(h, tol)) throw std::invalid_argument("eig_hermitian: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix matfn_hermitian(const Matrix& h, const std::function<Complex(double)>& f) {
    auto eig = eig_hermitian(h);
    Vector fl(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) fl(i) = f(eig.values(i));
    return eig.vectors * fl.asDiagonal() * eig.vectors.adjoint();
}

Matrix matrix_power(const Matrix& u, long t) {
    if (t < 0) throw std::invalid_argument("matrix_power: negative exponent");
    Matrix out = Matrix::Identity(u.rows(), u.cols());
    Matrix base = u;
    while (t > 0) {
        if (t & 1) out = out * base;
        base = base * base;
        t >>= 1;
    }
    return out;
}

Matrix partial_trace(const Matrix& rho, int n_qubits, const std::vector<int>& keep) {
    const std::uint64_t dim = 1ULL << n_qubits;
    if (rho.rows() != static_cast<Eigen::Index>(dim) || rho.cols() != rho.rows())
        throw std::invalid_argument("partial_trace: dimension mismatch");

    std::vector<int> keep_sorted = keep;
    std::sort(keep_sorted.begin(), keep_sorted.end());
    const int nk = static_cast<int>(keep_sorted.size());

    // keep_idx / rest_idx per full index, by bit gather
    std::vector<std::uint32_t> kidx(dim), ridx(dim);
    for (std::uint64_t x = 0; x < dim; ++x) {
        std::uint32_t k = 0, r = 0;
        int kpos = 0;
        for (int s = 1; s <= n_qubits; ++s) {
            int bit = (x >> (n_qubits - s)) & 1;
            if (kpos < nk && keep_sorted[kpos] == s) {
                k = (k << 1) | bit;
                ++kpos;
            } else {
                r = (r << 1) | bit;
            }
        }
        kidx[x] = k;
        ridx[x] = r;
    }

    Matrix out = Matrix::Zero(1ULL << nk, 1ULL << nk);
    for (std::uint64_t i = 0; i < dim; ++i)
        for (std::uint64_t j = 0; j < dim; ++j)
            if (ridx[i] == ridx[j]) out(kidx[i], kidx[j]) += rho(i, j);
    return out;
}

double operator_norm(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

double trace_norm(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().sum();
}

Matrix haar_unitary(int dim, Rng& rng) {
    if (dim < 1) throw std::invalid_argument("haar_unitary: dim must be >= 1");
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.gaussian_complex();
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i) {
        Complex rii = r(i, i);
        double a = std::abs(rii);
        q.col(i) *= (a == 0.0) ? Complex(1, 0) : rii / a;
    }
    return q;
}

Matrix random_hermitian(int dim, Rng& rng) {
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.gaussian_complex();
    return (g + g.adjoint()) / 2.0;
}

Vector random_state(int dim, Rng& rng) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = rng.gaussian_complex();
    v.normalize();
    return v;
}

Matrix random_density_matrix(int dim, Rng& rng, int rank) {
    if (rank <= 0 || rank > dim) rank = dim;
    Matrix g(dim, rank);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < rank; ++j) g(i, j) = rng.gaussian_complex();
    Matrix rho = g * g.adjoint();
    return rho / rho.trace();
}

void check_density_matrix(const Matrix& rho) {
    if (!is_hermitian(rho, 1e-10)) throw std::invalid_argument("density matrix: not Hermitian");
    if (std::abs(rho.trace() - Complex(1, 0)) > 1e-10)
        throw std::invalid_argument("density matrix: trace != 1");
    if (min_eigenvalue((rho + rho.adjoint()) / 2.0) < -1e-9)
        throw std::invalid_argument("density matrix: negative eigenvalue");
}

double min_eigenvalue(const Matrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
    return solver.eigenvalues().minCoeff();
}

} // namespace tbs
