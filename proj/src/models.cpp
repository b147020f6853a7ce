#include "tbs/models.hpp"

#include <stdexcept>

#include "tbs/state.hpp"

namespace tbs {

Evolution kicked_ising_step(const KickedIsingParams& params) {
    const int n = params.n;
    if (n < 2) throw std::invalid_argument("kicked_ising_step: n must be >= 2");
    std::vector<double> h = params.h;
    if (h.empty()) h.assign(n, 0.0);
    if (static_cast<int>(h.size()) != n)
        throw std::invalid_argument("kicked_ising_step: field vector length mismatch");

    const std::uint64_t dim = 1ULL << n;
    const int n_bonds = (params.boundary == Boundary::periodic) ? n : n - 1;

    // Ising + longitudinal part: diagonal phases in the computational basis.
    Vector ui(dim);
    for (std::uint64_t x = 0; x < dim; ++x) {
        double phase = 0;
        auto z = [&](int site) { return ((x >> (n - site)) & 1) ? -1.0 : 1.0; };
        for (int i = 1; i <= n_bonds; ++i) phase += params.j * z(i) * z(i % n + 1);
        for (int i = 1; i <= n; ++i) phase += h[i - 1] * z(i);
        ui(x) = std::exp(Complex(0, phase));
    }

    // Kick: product of single-site exp(i b X).
    Matrix rot(2, 2);
    rot << std::cos(params.b), Complex(0, std::sin(params.b)),
           Complex(0, std::sin(params.b)), std::cos(params.b);
    Matrix uk = Matrix::Identity(1, 1);
    for (int i = 0; i < n; ++i) uk = kron(uk, rot);

    Evolution ev;
    ev.kind = Evolution::Kind::floquet;
    ev.n = n;
    ev.step_left = uk * ui.asDiagonal();
    ev.step_right = ev.step_left.transpose();
    return ev;
}

Evolution hamiltonian_evolution(const Matrix& h, double dt) {
    if (!is_hermitian(h, 1e-10))
        throw std::invalid_argument("hamiltonian_evolution: h is not Hermitian");
    int n = 0;
    while ((1LL << n) < h.rows()) ++n;
    if ((1LL << n) != h.rows()) throw std::invalid_argument("hamiltonian_evolution: dim not 2^n");

    Evolution ev;
    ev.kind = Evolution::Kind::hamiltonian;
    ev.n = n;
    ev.step_left = matfn_hermitian(h, [dt](double e) { return std::exp(Complex(0, -e * dt)); });
    ev.step_right = ev.step_left.transpose();
    ev.hamiltonian = h;
    ev.dt = dt;
    return ev;
}

Evolution haar_evolution(int n, std::uint64_t seed) {
    Rng rng(seed);
    Evolution ev;
    ev.kind = Evolution::Kind::haar;
    ev.n = n;
    ev.step_left = haar_unitary(1 << n, rng);
    ev.step_right = ev.step_left.transpose();
    return ev;
}

std::vector<double> sample_disorder(int n, const DisorderSpec& spec, Rng& rng) {
    std::vector<double> h(n, 0.0);
    switch (spec.kind) {
        case DisorderSpec::Kind::none:
            break;
        case DisorderSpec::Kind::box:
            for (double& v : h) v = rng.uniform(-spec.param / 2, spec.param / 2);
            break;
        case DisorderSpec::Kind::gaussian: {
            double sigma = std::sqrt(spec.param);
            for (double& v : h) v = sigma * rng.gaussian();
            break;
        }
    }
    return h;
}

Matrix side_propagator(const Evolution& ev, Side side, long steps, Direction dir) {
    if (steps < 0) throw std::invalid_argument("side_propagator: steps must be >= 0");
    const Matrix& step = (side == Side::right) ? ev.step_right : ev.step_left;
    Matrix u = matrix_power(step, steps);
    return (dir == Direction::backward) ? Matrix(u.adjoint()) : u;
}

Vector evolve(const Vector& psi, const Evolution& ev, long steps, Direction dir, Side side) {
    const std::uint64_t side_dim = 1ULL << ev.n;
    if (psi.size() == static_cast<Eigen::Index>(side_dim)) {
        if (side != Side::whole) throw std::invalid_argument("evolve: single-sided state");
        return side_propagator(ev, Side::whole, steps, dir) * psi;
    }
    if (psi.size() != static_cast<Eigen::Index>(side_dim * side_dim))
        throw std::invalid_argument("evolve: state is neither n nor 2n qubits");
    Vector out = psi;
    if (side == Side::left || side == Side::whole)
        out = apply_to_range(side_propagator(ev, Side::left, steps, dir), out, 2 * ev.n, 1, ev.n);
    if (side == Side::right || side == Side::whole)
        out = apply_to_range(side_propagator(ev, Side::right, steps, dir), out, 2 * ev.n,
                             ev.n + 1, ev.n);
    return out;
}

} // namespace tbs
