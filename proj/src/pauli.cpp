#include "tbs/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace tbs {

namespace {

constexpr std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int popcount(std::uint64_t x) { return std::popcount(x); }

void check_width(int n) {
    if (n < 1 || n > 63) throw std::invalid_argument("PauliString: qubit count must be in [1,63]");
}

} // namespace

PauliString PauliString::identity(int n) {
    check_width(n);
    return PauliString(n, 0, 0, 0);
}

PauliString PauliString::from_label(std::string_view label) {
    int n = static_cast<int>(label.size());
    check_width(n);
    std::uint64_t p = 0, q = 0;
    for (int i = 0; i < n; ++i) {
        std::uint64_t bit = 1ULL << (n - 1 - i); // site i+1 is the MSB side
        switch (label[i]) {
            case 'I': break;
            case 'X': q |= bit; break;
            case 'Y': p |= bit; q |= bit; break;
            case 'Z': p |= bit; break;
            default: throw std::invalid_argument("PauliString: invalid label character");
        }
    }
    return PauliString(n, p, q, 0);
}

PauliString PauliString::from_bits(int n, std::uint64_t p, std::uint64_t q, int phase_exp) {
    check_width(n);
    std::uint64_t mask = (n == 63) ? ~0ULL >> 1 : (1ULL << n) - 1;
    if ((p & ~mask) || (q & ~mask)) throw std::invalid_argument("PauliString: bits outside qubit range");
    return PauliString(n, p, q, ((phase_exp % 4) + 4) % 4);
}

PauliString PauliString::from_int_vectors(const std::vector<long>& p, const std::vector<long>& q,
                                          int phase_exp) {
    if (p.size() != q.size() || p.empty()) throw std::invalid_argument("PauliString: bad vector sizes");
    int n = static_cast<int>(p.size());
    check_width(n);
    // Reduce entries mod 4, split v = v' + 2w with v',w binary, and apply
    // P_{v'+2w} = (-1)^{[v',w]} P_{v'}.
    std::uint64_t pb = 0, qb = 0, wp = 0, wq = 0;
    for (int i = 0; i < n; ++i) {
        std::uint64_t bit = 1ULL << (n - 1 - i);
        long pi = ((p[i] % 4) + 4) % 4;
        long qi = ((q[i] % 4) + 4) % 4;
        if (pi & 1) pb |= bit;
        if (qi & 1) qb |= bit;
        if (pi & 2) wp |= bit;
        if (qi & 2) wq |= bit;
    }
    int sign = (popcount(pb & wq) + popcount(qb & wp)) & 1;
    return PauliString(n, pb, qb, (phase_exp + 2 * sign) & 3);
}

PauliString PauliString::from_index(int n, std::uint64_t index, int phase_exp) {
    check_width(n);
    std::uint64_t mask = (1ULL << n) - 1;
    return from_bits(n, (index >> n) & mask, index & mask, phase_exp);
}

int PauliString::size() const { return popcount(p_ | q_); }

int PauliString::count_xy(std::uint64_t mask) const { return popcount(q_ & mask); }

PauliString PauliString::transposed() const {
    // P^T = (-1)^{p.q} P
    int sign = popcount(p_ & q_) & 1;
    return PauliString(n_, p_, q_, (phase_ + 2 * sign) & 3);
}

PauliString PauliString::y_conjugate_transposed() const {
    int sign = size() & 1;
    return PauliString(n_, p_, q_, (phase_ + 2 * sign) & 3);
}

std::string PauliString::label() const {
    static const char* prefix[4] = {"", "i", "-", "-i"};
    std::string out = prefix[phase_];
    for (int i = 0; i < n_; ++i) {
        std::uint64_t bit = 1ULL << (n_ - 1 - i);
        bool zp = p_ & bit, xq = q_ & bit;
        out += zp ? (xq ? 'Y' : 'Z') : (xq ? 'X' : 'I');
    }
    return out;
}

Eigen::MatrixXcd PauliString::dense() const {
    std::uint64_t dim = 1ULL << n_;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    // P_{(p,q)}|l> = i^{-p.q} (-1)^{p.(l^q)} |l^q>
    int base = ((phase_ - popcount(p_ & q_)) % 4 + 4) % 4;
    for (std::uint64_t l = 0; l < dim; ++l) {
        std::uint64_t r = l ^ q_;
        int sgn = popcount(p_ & r) & 1;
        m(r, l) = kIPow[(base + 2 * sgn) & 3];
    }
    return m;
}

PauliString operator*(const PauliString& a, const PauliString& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("PauliString: size mismatch in multiply");
    // P_v P_w = i^{[v,w]} P_{v+w}; reduce the binary carries with the
    // mod-2/mod-4 sign rule.
    int symp = popcount(a.p_ & b.q_) - popcount(a.q_ & b.p_);
    std::uint64_t p = a.p_ ^ b.p_;
    std::uint64_t q = a.q_ ^ b.q_;
    std::uint64_t wp = a.p_ & b.p_;
    std::uint64_t wq = a.q_ & b.q_;
    int carry_sign = (popcount(p & wq) + popcount(q & wp)) & 1;
    int phase = a.phase_ + b.phase_ + symp + 2 * carry_sign;
    return PauliString(a.n_, p, q, ((phase % 4) + 4) % 4);
}

int symplectic_form(const PauliString& a, const PauliString& b) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument("symplectic_form: size mismatch");
    return popcount(a.p_bits() & b.q_bits()) - popcount(a.q_bits() & b.p_bits());
}

std::uint64_t site_mask(int n, const std::vector<int>& sites) {
    std::uint64_t mask = 0;
    for (int s : sites) {
        if (s < 1 || s > n) throw std::invalid_argument("site_mask: site out of range");
        mask |= 1ULL << (n - s);
    }
    return mask;
}

} // namespace tbs
