#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tbs {

/// Signed n-qubit Pauli (Weyl) operator in the symplectic representation.
///
/// The operator represented is i^{phase_exp} * P_{(p,q)} with
///   P_{(p,q)} = i^{-p.q} Z^{p_1}X^{q_1} x ... x Z^{p_n}X^{q_n},
/// p and q packed one bit per site. Site 1 is the most significant bit, so
/// dense() agrees with kron over sites in label order. The canonical form
/// keeps p, q in {0,1}^n and folds all signs into phase_exp (mod 4), which
/// makes equality and hashing well defined.
class PauliString {
public:
    PauliString() = default;

    static PauliString identity(int n);
    /// Parse a label over {I,X,Y,Z}; throws std::invalid_argument otherwise.
    static PauliString from_label(std::string_view label);
    static PauliString from_bits(int n, std::uint64_t p, std::uint64_t q, int phase_exp = 0);
    /// Canonical reduction of arbitrary integer symplectic vectors: entries are
    /// taken mod 4 and the mod-2/mod-4 sign rule folds the carries into the phase.
    static PauliString from_int_vectors(const std::vector<long>& p, const std::vector<long>& q,
                                        int phase_exp = 0);
    /// Inverse of index(): index packs (p,q) as (p << n) | q.
    static PauliString from_index(int n, std::uint64_t index, int phase_exp = 0);

    int num_qubits() const { return n_; }
    std::uint64_t p_bits() const { return p_; }
    std::uint64_t q_bits() const { return q_; }
    int phase_exp() const { return phase_; }
    std::uint64_t index() const { return (p_ << n_) | q_; }

    /// Number of non-identity tensor factors.
    int size() const;
    /// Number of X or Y factors on the sites selected by site_mask
    /// (site i corresponds to bit n-i, as produced by site_mask()).
    int count_xy(std::uint64_t site_mask) const;

    PauliString transposed() const;
    /// Y^{x n} P^T Y^{x n} = (-1)^{|P|} P.
    PauliString y_conjugate_transposed() const;

    std::string label() const;
    Eigen::MatrixXcd dense() const;

    friend PauliString operator*(const PauliString& a, const PauliString& b);
    bool operator==(const PauliString&) const = default;

private:
    PauliString(int n, std::uint64_t p, std::uint64_t q, int phase)
        : n_(n), p_(p), q_(q), phase_(phase & 3) {}

    int n_ = 0;
    std::uint64_t p_ = 0;
    std::uint64_t q_ = 0;
    int phase_ = 0; // exponent of i, mod 4
};

/// [(p,q),(p',q')] = p.q' - q.p' as an integer; its parity decides commutation.
int symplectic_form(const PauliString& a, const PauliString& b);

/// Bitmask selecting the given 1-based sites of an n-qubit system.
std::uint64_t site_mask(int n, const std::vector<int>& sites);

} // namespace tbs
