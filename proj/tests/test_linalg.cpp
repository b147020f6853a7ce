#include <doctest.h>

#include "tbs/linalg.hpp"
#include "tbs/pauli.hpp"
#include "tbs/state.hpp"

using namespace tbs;

TEST_CASE("kron basics") {
    Matrix i2 = Matrix::Identity(2, 2);
    CHECK(kron(i2, i2).isApprox(Matrix::Identity(4, 4), 0));
    Matrix xz = kron(PauliString::from_label("X").dense(), PauliString::from_label("Z").dense());
    CHECK(xz.isApprox(PauliString::from_label("XZ").dense(), 0));
    CHECK(kron(Matrix::Identity(2, 2), Matrix::Identity(4, 4)).rows() == 8);

    // mixed-product property on random blocks
    Rng rng(3);
    Matrix a = random_hermitian(2, rng), b = random_hermitian(4, rng);
    Matrix c = random_hermitian(2, rng), d = random_hermitian(4, rng);
    CHECK((kron(a, b) * kron(c, d) - kron(Matrix(a * c), Matrix(b * d))).cwiseAbs().maxCoeff() <
          1e-12);
}

TEST_CASE("Hermitian eigendecomposition") {
    auto z = eig_hermitian(PauliString::from_label("Z").dense());
    CHECK(z.values(0) == doctest::Approx(-1).epsilon(1e-14));
    CHECK(z.values(1) == doctest::Approx(1).epsilon(1e-14));

    auto x = eig_hermitian(PauliString::from_label("X").dense());
    CHECK(x.values(0) == doctest::Approx(-1).epsilon(1e-14));
    for (int col = 0; col < 2; ++col)
        for (int row = 0; row < 2; ++row)
            CHECK(std::abs(x.vectors(row, col)) == doctest::Approx(M_SQRT1_2).epsilon(1e-12));

    Rng rng(5);
    Matrix h = random_hermitian(16, rng);
    auto eig = eig_hermitian(h);
    Matrix rebuilt = eig.vectors * eig.values.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    CHECK((rebuilt - h).norm() < 1e-9);

    Matrix bad(2, 2);
    bad << 0, 1, 0, 0;
    CHECK_THROWS_AS(eig_hermitian(bad), std::invalid_argument);
}

TEST_CASE("Hermitian matrix functions") {
    Matrix z = PauliString::from_label("Z").dense();
    CHECK((matfn_hermitian(z, [](double e) { return Complex(e, 0); }) - z).norm() < 1e-12);

    Matrix x = PauliString::from_label("X").dense();
    Matrix u = matfn_hermitian(x, [](double e) { return std::exp(Complex(0, -M_PI / 2 * e)); });
    Matrix expect = Complex(0, -1) * x;
    CHECK((u - expect).norm() < 1e-12);
    CHECK(is_unitary(u, 1e-9));

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 4;
    d(1, 1) = 9;
    Matrix r = matfn_hermitian(d, [](double e) { return Complex(std::sqrt(e), 0); });
    CHECK(r(0, 0).real() == doctest::Approx(2).epsilon(1e-14));
    CHECK(r(1, 1).real() == doctest::Approx(3).epsilon(1e-14));
}

TEST_CASE("partial trace") {
    Rng rng(7);
    Matrix rho_a = random_density_matrix(2, rng);
    Matrix rho_b = random_density_matrix(4, rng);
    CHECK((partial_trace(kron(rho_a, rho_b), 3, {1}) - rho_a).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((partial_trace(kron(rho_a, rho_b), 3, {2, 3}) - rho_b).cwiseAbs().maxCoeff() < 1e-12);

    Vector bell = phi_plus_state(1);
    Matrix half = partial_trace(bell * bell.adjoint(), 2, {1});
    CHECK((half - Matrix::Identity(2, 2) / 2).cwiseAbs().maxCoeff() < 1e-12);

    // explicit basis-bra oracle on a random 3-qubit state, keep site 1
    Matrix rho = random_density_matrix(8, rng);
    Matrix expect = Matrix::Zero(2, 2);
    for (int rest = 0; rest < 4; ++rest)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) expect(a, b) += rho(a * 4 + rest, b * 4 + rest);
    CHECK((partial_trace(rho, 3, {1}) - expect).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(partial_trace(rho, 3, {2}).trace() - Complex(1, 0)) < 1e-12);
}

TEST_CASE("matrix norms agree with SVD oracles") {
    Rng rng(29);
    Matrix m(16, 16);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) m(i, j) = rng.gaussian_complex();
    Eigen::JacobiSVD<Matrix> svd(m);
    CHECK(operator_norm(m) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-9));
    CHECK(trace_norm(m) == doctest::Approx(svd.singularValues().sum()).epsilon(1e-9));
    CHECK(m.norm() == doctest::Approx(std::sqrt((m.adjoint() * m).trace().real())).epsilon(1e-9));
}

TEST_CASE("Haar unitaries") {
    Rng rng(11);
    Matrix u1 = haar_unitary(1, rng);
    CHECK(std::abs(std::abs(u1(0, 0)) - 1.0) < 1e-12);

    for (int rep = 0; rep < 10; ++rep) {
        Matrix u = haar_unitary(8, rng);
        CHECK(is_unitary(u, 1e-10));
    }

    // first-moment twirl: mean of U A U^dag -> tr(A)/d I
    Matrix a = random_hermitian(4, rng);
    Matrix mean = Matrix::Zero(4, 4);
    const int samples = 10000;
    std::vector<Matrix> terms(samples);
    for (int s = 0; s < samples; ++s) {
        Matrix u = haar_unitary(4, rng);
        terms[s] = u * a * u.adjoint();
        mean += terms[s];
    }
    mean /= samples;
    Matrix target = a.trace() / 4.0 * Matrix::Identity(4, 4);
    // elementwise 3 sigma
    Eigen::MatrixXd var = Eigen::MatrixXd::Zero(4, 4);
    for (const Matrix& t : terms) {
        var += (t - mean).real().cwiseProduct((t - mean).real());
        var += (t - mean).imag().cwiseProduct((t - mean).imag());
    }
    Eigen::MatrixXd sigma = (var / (samples - 1) / samples).cwiseSqrt();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(mean(i, j) - target(i, j)) <= 3 * sigma(i, j) + 1e-12);

    // invariance under a fixed left rotation, compared on first moments
    Rng rng_a(123), rng_b(123);
    Matrix w = haar_unitary(4, rng);
    Complex m1 = 0, m2 = 0;
    for (int s = 0; s < 4000; ++s) {
        m1 += haar_unitary(4, rng_a)(0, 0);
        m2 += (w * haar_unitary(4, rng_b))(0, 0);
    }
    CHECK(std::abs(m1 / 4000.0) < 0.05);
    CHECK(std::abs(m2 / 4000.0) < 0.05);
}

TEST_CASE("density matrix validation") {
    Rng rng(13);
    CHECK_NOTHROW(check_density_matrix(random_density_matrix(8, rng)));
    Matrix bad = Matrix::Identity(2, 2);
    CHECK_THROWS(check_density_matrix(bad)); // trace 2
    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS(check_density_matrix(neg));
}

TEST_CASE("matrix power") {
    Rng rng(17);
    Matrix u = haar_unitary(8, rng);
    CHECK((matrix_power(u, 0) - Matrix::Identity(8, 8)).norm() < 1e-14);
    CHECK((matrix_power(u, 5) - u * u * u * u * u).norm() < 1e-10);
}
