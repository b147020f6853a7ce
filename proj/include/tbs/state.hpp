#pragma once

#include "tbs/linalg.hpp"

namespace tbs {

// State vectors are indexed MSB-first: site 1 owns the most significant bit.
// A two-sided system stores the left side in the high-order bits.

/// Apply a 2^count-dimensional operator to the contiguous sites
/// [first_site, first_site + count) of an n-qubit state.
Vector apply_to_range(const Matrix& u, const Vector& psi, int n_qubits, int first_site, int count);

/// exp(i g (1/k) sum_i Z_a Z_b) over k = |pairs| site pairs; diagonal, O(2^n).
Vector apply_pair_coupling(const Vector& psi, int n_qubits, double g,
                           const std::vector<std::pair<int, int>>& site_pairs);

/// rho on the kept sites (ascending site order = descending significance).
Matrix reduced_density_matrix(const Vector& psi, int n_qubits, const std::vector<int>& keep);

double z_expectation(const Vector& psi, int n_qubits, int site);

/// a on the high-order bits, b on the low-order bits.
Vector tensor(const Vector& a, const Vector& b);

/// Reorder sites: new site i holds what old site new_from_old[i-1] held.
Vector permute_sites(const Vector& psi, int n_qubits, const std::vector<int>& new_from_old);

/// View psi (n_left + n_right qubits, left = high bits) as the matrix
/// M(l, r) = psi[l * 2^{n_right} + r].
Matrix as_matrix(const Vector& psi, int n_left, int n_right);
Vector from_matrix(const Matrix& m);

/// Maximally entangled pair chain: site i (left, high bits) with site n+i.
Vector phi_plus_state(int n_pairs);

} // namespace tbs
