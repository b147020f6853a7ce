#pragma once

#include <optional>

#include "tbs/linalg.hpp"

namespace tbs {

enum class Boundary { periodic, open };

struct DisorderSpec {
    enum class Kind { none, box, gaussian };
    Kind kind = Kind::none;
    double param = 0.0; // box: width; gaussian: variance
};

struct KickedIsingParams {
    int n = 2;
    double j = M_PI / 4;
    double b = M_PI / 4;
    std::vector<double> h; // length n; empty = zeros
    Boundary boundary = Boundary::periodic;
};

/// One-step evolution for a two-sided run. The left side steps with u;
/// the right side steps with u^T (transposed dynamics).
struct Evolution {
    enum class Kind { floquet, hamiltonian, haar };
    Kind kind = Kind::floquet;
    int n = 0;            // qubits per side
    Matrix step_left;     // one forward step on the left
    Matrix step_right;    // = step_left.transpose()
    std::optional<Matrix> hamiltonian; // set for Kind::hamiltonian
    double dt = 0.0;
};

/// U = U_K U_I with U_K = exp(i b sum_i X_i) and
/// U_I = exp(i J sum Z_i Z_{i+1} + i sum h_i Z_i); the transposed step is
/// U_I U_K (reverse pulse order). U_I is assigned directly as computational-
/// basis phases; U_K is a product of single-site rotations.
Evolution kicked_ising_step(const KickedIsingParams& params);

Evolution hamiltonian_evolution(const Matrix& h, double dt);

/// One Haar-random unitary as the left step; bitwise reproducible per seed.
Evolution haar_evolution(int n, std::uint64_t seed);

/// box(w): uniform on [-w/2, w/2]; gaussian(v): mean 0, variance v.
std::vector<double> sample_disorder(int n, const DisorderSpec& spec, Rng& rng);

enum class Side { left, right, whole };
enum class Direction { forward, backward };

/// Propagator for `steps` applications of the side's step (inverted for
/// backward). Side::whole refers to the single-sided step itself.
Matrix side_propagator(const Evolution& ev, Side side, long steps,
                       Direction dir = Direction::forward);

/// Evolve a state. A 2n-qubit state is treated as [L][R] and the chosen side
/// is stepped; an n-qubit state takes the bare step (side must be whole).
Vector evolve(const Vector& psi, const Evolution& ev, long steps, Direction dir, Side side);

} // namespace tbs
