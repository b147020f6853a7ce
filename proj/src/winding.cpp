#include "tbs/winding.hpp"

#include <bit>
#include <stdexcept>

#include "tbs/pauli.hpp"
#include "tbs/state.hpp"

namespace tbs {

namespace {

constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int qubits_of(const Matrix& a) {
    int n = 0;
    while ((1LL << n) < a.rows()) ++n;
    if ((1LL << n) != a.rows() || a.rows() != a.cols())
        throw std::invalid_argument("operator dimension is not 2^n");
    return n;
}

std::uint64_t carrier_mask_of(int n, int m) { return (1ULL << (n - m)) - 1; }

} // namespace

OperatorWavefunction pauli_decompose(const Matrix& a) {
    const int n = qubits_of(a);
    if (n > 8) throw std::invalid_argument("pauli_decompose: capped at 8 qubits");
    const std::uint64_t dim = 1ULL << n;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));

    OperatorWavefunction w;
    w.n = n;
    w.coeffs.resize(dim * dim);
    // c_P = 2^{-n/2} tr(P a) with tr(P a) = i^{-p.q} sum_l (-1)^{p.l} a(l^q, l)
    for (std::uint64_t p = 0; p < dim; ++p) {
        for (std::uint64_t q = 0; q < dim; ++q) {
            Complex acc = 0;
            for (std::uint64_t l = 0; l < dim; ++l) {
                int sgn = std::popcount(p & l) & 1;
                acc += sgn ? -a(l ^ q, l) : a(l ^ q, l);
            }
            int e = (4 - (std::popcount(p & q) & 3)) & 3;
            Complex c = scale * kIPow[e] * acc;
            w.coeffs[(p << n) | q] = c;
            w.norm_sq += std::norm(c);
        }
    }
    return w;
}

Matrix pauli_reconstruct(const OperatorWavefunction& w) {
    const std::uint64_t dim = 1ULL << w.n;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    Matrix a = Matrix::Zero(dim, dim);
    for (std::uint64_t p = 0; p < dim; ++p) {
        for (std::uint64_t q = 0; q < dim; ++q) {
            Complex c = w.coeffs[(p << w.n) | q];
            if (c == Complex(0, 0)) continue;
            int e = (4 - (std::popcount(p & q) & 3)) & 3;
            Complex base = scale * kIPow[e] * c;
            for (std::uint64_t l = 0; l < dim; ++l)
                a(l, l ^ q) += (std::popcount(p & l) & 1) ? -base : base;
        }
    }
    return a;
}

WindingSizeDistribution winding_distribution(const OperatorWavefunction& w) {
    WindingSizeDistribution d;
    d.winding.assign(w.n + 1, Complex(0, 0));
    d.conventional.assign(w.n + 1, 0.0);
    const std::uint64_t dim = 1ULL << w.n;
    for (std::uint64_t p = 0; p < dim; ++p) {
        for (std::uint64_t q = 0; q < dim; ++q) {
            Complex c = w.coeffs[(p << w.n) | q];
            int l = std::popcount(p | q);
            d.winding[l] += c * c;
            d.conventional[l] += std::norm(c);
        }
    }
    return d;
}

OperatorWavefunction twist_uniform(const OperatorWavefunction& w, double g) {
    OperatorWavefunction out = w;
    const std::uint64_t dim = 1ULL << w.n;
    std::vector<Complex> table(w.n + 1);
    for (int l = 0; l <= w.n; ++l)
        table[l] = std::exp(Complex(0, g * (1.0 - (4.0 / 3.0) * l / w.n)));
    for (std::uint64_t p = 0; p < dim; ++p)
        for (std::uint64_t q = 0; q < dim; ++q)
            out.coeffs[(p << w.n) | q] *= table[std::popcount(p | q)];
    return out;
}

OperatorWavefunction twist_xb(const OperatorWavefunction& w, double g, std::uint64_t carrier_mask) {
    OperatorWavefunction out = w;
    const int k = std::popcount(carrier_mask);
    if (k < 1) throw std::invalid_argument("twist_xb: empty carrier set");
    const std::uint64_t dim = 1ULL << w.n;
    std::vector<Complex> table(k + 1);
    for (int c = 0; c <= k; ++c)
        table[c] = std::exp(Complex(0, g * (1.0 - 2.0 * c / k)));
    for (std::uint64_t p = 0; p < dim; ++p)
        for (std::uint64_t q = 0; q < dim; ++q)
            out.coeffs[(p << w.n) | q] *= table[std::popcount(q & carrier_mask)];
    return out;
}

std::pair<double, double> twist_difference_bound(const OperatorWavefunction& w, double g, int m,
                                                 int k) {
    const int n = w.n;
    if (m + k != n) throw std::invalid_argument("twist_difference_bound: m + k != n");
    const std::uint64_t cmask = carrier_mask_of(n, m);
    const std::uint64_t dim = 1ULL << n;
    double lhs_sq = 0;
    for (std::uint64_t p = 0; p < dim; ++p) {
        for (std::uint64_t q = 0; q < dim; ++q) {
            Complex c = w.coeffs[(p << n) | q];
            if (c == Complex(0, 0)) continue;
            double th_exact = g * (1.0 - 2.0 * std::popcount(q & cmask) / k);
            double th_unif = g * (1.0 - (4.0 / 3.0) * std::popcount(p | q) / n);
            lhs_sq += std::norm(c) * std::norm(std::exp(Complex(0, th_exact)) -
                                               std::exp(Complex(0, th_unif)));
        }
    }
    double rhs = (4.0 / 3.0) * std::abs(g) *
                 std::sqrt(1.0 / (2.0 * k) + std::pow(static_cast<double>(m) / n, 2)) *
                 std::sqrt(w.norm_sq);
    return {std::sqrt(lhs_sq), rhs};
}

double support_uniformity_violation(const OperatorWavefunction& w) {
    const std::uint64_t dim = 1ULL << w.n;
    std::vector<double> sum(dim, 0.0);
    std::vector<double> count(dim, 0.0);
    for (std::uint64_t p = 0; p < dim; ++p) {
        for (std::uint64_t q = 0; q < dim; ++q) {
            std::uint64_t s = p | q;
            sum[s] += std::norm(w.coeffs[(p << w.n) | q]);
            count[s] += 1.0;
        }
    }
    double dev = 0;
    for (std::uint64_t p = 0; p < dim; ++p) {
        for (std::uint64_t q = 0; q < dim; ++q) {
            std::uint64_t s = p | q;
            dev += std::abs(std::norm(w.coeffs[(p << w.n) | q]) - sum[s] / count[s]);
        }
    }
    return (w.norm_sq > 0) ? dev / w.norm_sq : 0.0;
}

Complex fourier_winding(const WindingSizeDistribution& q, double g, int n) {
    Complex acc = 0;
    for (int l = 0; l < static_cast<int>(q.winding.size()); ++l)
        acc += q.winding[l] * std::exp(Complex(0, -(4.0 * g / 3.0) * l / n));
    return acc;
}

Complex pair_trace(const OperatorWavefunction& a, const OperatorWavefunction& b) {
    if (a.n != b.n || a.coeffs.size() != b.coeffs.size())
        throw std::invalid_argument("pair_trace: size mismatch");
    Complex acc = 0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) acc += a.coeffs[i] * b.coeffs[i];
    return acc;
}

Matrix thermal_operator(const Evolution& ev, const Matrix& sqrt_thermal, const Matrix& o, long t) {
    Matrix u = matrix_power(ev.step_right, t);
    return sqrt_thermal.transpose() * (u.adjoint() * o * u);
}

Matrix embed_message_operator(const Matrix& o, int n, int m) {
    if (o.rows() == (1LL << n)) return o;
    if (o.rows() != (1LL << m))
        throw std::invalid_argument("embed_message_operator: bad operator size");
    return kron(o, Matrix::Identity(1LL << (n - m), 1LL << (n - m)));
}

Complex two_point_function(const ProtocolConfig& cfg, const Matrix& o) {
    const int n = cfg.n;
    const int k = cfg.carriers();
    const Matrix of = embed_message_operator(o, n, cfg.m);
    const Matrix a = protocol_tfd(cfg).sqrt_thermal; // TFD amplitude matrix

    Matrix ul = matrix_power(cfg.evolution.step_left, cfg.t_left);
    Matrix xl = ul * of.transpose() * ul.adjoint(); // O^T buried at -t on the left
    Matrix ur = matrix_power(cfg.evolution.step_left, cfg.t_right);
    Matrix xr = ur * of.transpose() * ur.adjoint(); // right-side O(t) as a right factor

    Matrix b = xl * a;
    // Hadamard coupling mask over carrier bits of the two sides
    const std::uint64_t dim = 1ULL << n;
    const std::uint64_t cmask = carrier_mask_of(n, cfg.m);
    std::vector<Complex> table(k + 1);
    for (int d = 0; d <= k; ++d)
        table[d] = std::exp(Complex(0, cfg.g * (k - 2.0 * d) / k));
    for (std::uint64_t l = 0; l < dim; ++l)
        for (std::uint64_t r = 0; r < dim; ++r)
            b(l, r) *= table[std::popcount((l ^ r) & cmask)];
    return (a * b * xr).trace();
}

double pauli_size_class_count(int m, int l) {
    double binom = 1;
    for (int i = 0; i < l; ++i) binom = binom * (m - i) / (i + 1);
    return binom * std::pow(3.0, l);
}

FidelityReport compute_fq(const ProtocolConfig& cfg) {
    const int n = cfg.n, m = cfg.m, k = cfg.carriers();
    if (m > 3) throw std::invalid_argument("compute_fq: message Pauli enumeration capped at m = 3");
    if (cfg.t_left != cfg.t_right)
        throw std::invalid_argument("compute_fq: requires t_left == t_right");
    const long t = cfg.t_left;
    const std::uint64_t cmask = carrier_mask_of(n, m);
    const double weight = 1.0 / std::pow(4.0, m);

    const Matrix sqrt_thermal = protocol_tfd(cfg).sqrt_thermal;
    const Matrix ur = matrix_power(cfg.evolution.step_right, t);

    FidelityReport rep;
    rep.q_tilde.assign(m + 1, Complex(0, 0));
    Matrix g_acc = Matrix::Zero(1LL << n, 1LL << n);
    Complex lower_acc = 0;
    double violation_acc = 0;

    for (std::uint64_t pa = 0; pa < (1ULL << m); ++pa) {
        for (std::uint64_t qa = 0; qa < (1ULL << m); ++qa) {
            const int l = std::popcount(pa | qa);
            const double parity = (l % 2 == 0) ? 1.0 : -1.0;
            const PauliString pauli =
                PauliString::from_bits(n, pa << (n - m), qa << (n - m));
            const Matrix pt = ur.adjoint() * pauli.dense() * ur;
            const Matrix w = sqrt_thermal.transpose() * pt;

            const OperatorWavefunction wf = pauli_decompose(w);
            rep.q_tilde[l] += fourier_winding(winding_distribution(wf), cfg.g, n);
            const OperatorWavefunction twisted = twist_xb(wf, cfg.g, cmask);
            lower_acc += weight * parity * pair_trace(wf, twisted);
            g_acc += weight * parity * (pt * pauli_reconstruct(twisted));
            violation_acc += weight * support_uniformity_violation(wf);
        }
    }

    double fq_acc_check = 0;
    Complex fq_sum = 0;
    double ub1_tail = 0;
    for (int l = 0; l <= m; ++l) {
        const double nl = pauli_size_class_count(m, l);
        rep.q_tilde[l] /= nl;
        fq_sum += (nl * weight) * ((l % 2 == 0) ? 1.0 : -1.0) * rep.q_tilde[l];
        ub1_tail += nl * weight * std::sqrt(std::max(0.0, 1.0 - std::norm(rep.q_tilde[l])));
        fq_acc_check += nl * weight;
    }
    (void)fq_acc_check;

    rep.f_q = std::abs(fq_sum);
    rep.f_exact = g_acc.norm();
    rep.upper_1 = rep.f_q + ub1_tail;
    rep.upper_2 = 1.0 - weight * (1.0 - rep.f_q);
    rep.lower_exact = std::abs(lower_acc);
    rep.epsilon = (4.0 / 3.0) * std::abs(cfg.g) *
                  std::sqrt(1.0 / (2.0 * k) + std::pow(static_cast<double>(m) / n, 2));
    rep.hypothesis_violation = violation_acc;
    return rep;
}

double fq_late_time_haar(int m, double g) {
    const double weight = 1.0 / std::pow(4.0, m);
    Complex acc = weight; // l = 0 term, q~_0 = 1
    const Complex phase = std::exp(Complex(0, -g));
    for (int l = 1; l <= m; ++l)
        acc += pauli_size_class_count(m, l) * weight * ((l % 2 == 0) ? 1.0 : -1.0) * phase;
    return std::abs(acc);
}

PhaseLinearity winding_phase_linearity(const WindingSizeDistribution& q) {
    // weighted fit of the unwrapped phase arg q(l) against l
    std::vector<double> ls, phases, weights;
    double wmax = 0;
    for (const Complex& c : q.winding) wmax = std::max(wmax, std::abs(c));
    double prev = 0;
    bool have_prev = false;
    for (int l = 0; l < static_cast<int>(q.winding.size()); ++l) {
        double mag = std::abs(q.winding[l]);
        if (mag < 1e-12 * wmax) continue;
        double th = std::arg(q.winding[l]);
        if (have_prev) {
            while (th - prev > M_PI) th -= 2 * M_PI;
            while (th - prev < -M_PI) th += 2 * M_PI;
        }
        prev = th;
        have_prev = true;
        ls.push_back(l);
        phases.push_back(th);
        weights.push_back(mag);
    }
    PhaseLinearity out;
    if (ls.size() < 2) return out;
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ls.size(); ++i) {
        sw += weights[i];
        sx += weights[i] * ls[i];
        sy += weights[i] * phases[i];
        sxx += weights[i] * ls[i] * ls[i];
        sxy += weights[i] * ls[i] * phases[i];
    }
    double denom = sw * sxx - sx * sx;
    if (std::abs(denom) < 1e-30) return out;
    out.slope = (sw * sxy - sx * sy) / denom;
    double intercept = (sy - out.slope * sx) / sw;
    double ss = 0;
    for (std::size_t i = 0; i < ls.size(); ++i)
        ss += weights[i] * std::pow(phases[i] - out.slope * ls[i] - intercept, 2);
    out.rms_residual = std::sqrt(ss / sw);
    return out;
}

} // namespace tbs
