#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dirac/half_int.hpp"
#include "dirac/specfun.hpp"

namespace dirac {

/// Nuclear charge and fine-structure constant.  Internally hbar = m = c = 1
/// and e^2 = alpha; all radial I/O is in Bohr-radius units r / (r_B / Z).
struct PhysicalConfig {
    double Z = 1.0;
    double alpha = 7.2973525693e-3;

    double zalpha() const { return Z * alpha; }
};

/// gamma_j = sqrt(kappa^2 - (Z alpha)^2), positive branch.
/// The state does not exist for Z alpha >= kappa.
inline double gamma_j(int kappa, double zalpha) {
    if (kappa < 1) throw std::domain_error("gamma_j: kappa must be a positive integer");
    if (!(zalpha < kappa))
        throw std::domain_error("gamma_j: Z*alpha must be below kappa (no bound state)");
    if (!(zalpha > 0.0)) {
        if (zalpha == 0.0) return kappa;
        throw std::domain_error("gamma_j: Z*alpha must be non-negative");
    }
    return std::sqrt((double(kappa) - zalpha) * (double(kappa) + zalpha));
}

/// One bound state: radial number n_r >= 0, kappa_j = j + 1/2 >= 1,
/// projection m_j, and the sign sigma of the invariant eigenvalue.
/// n_r = 0 admits only sigma = +1.
struct QuantumNumbers {
    int n_r = 0;
    int kappa = 1;
    HalfInt m_j{1};
    int sigma = +1;

    int n() const { return n_r + kappa; }
    int two_j() const { return 2 * kappa - 1; }

    bool valid() const {
        if (n_r < 0 || kappa < 1) return false;
        if (sigma != +1 && sigma != -1) return false;
        if (n_r == 0 && sigma != +1) return false;
        if (!m_j.is_half_odd()) return false;
        return m_j.abs().twice() <= two_j();
    }
    void validate() const {
        if (!valid()) throw std::invalid_argument("QuantumNumbers: invalid state selector");
    }
};

/// Closed-form spectrum data for one (n_r, kappa, Z alpha).
struct EnergyTerms {
    double epsilon = 0.0;   ///< E / (m c^2), in (0, 1)
    double varkappa = 0.0;  ///< damping, sqrt(1 - epsilon^2)
    double big_n = 0.0;     ///< sqrt((n_r + gamma_j)^2 + (Z alpha)^2)
};

inline EnergyTerms energy(int n_r, int kappa, double zalpha) {
    if (n_r < 0) throw std::domain_error("energy: n_r must be non-negative");
    const double g = gamma_j(kappa, zalpha);
    EnergyTerms t;
    t.big_n = std::sqrt((n_r + g) * (n_r + g) + zalpha * zalpha);
    t.epsilon = (n_r + g) / t.big_n;
    t.varkappa = zalpha / t.big_n;
    return t;
}

/// Fine structure of the level (n, kappa): Delta_j = kappa - gamma_j
/// (computed in the cancellation-free form) and the same epsilon as
/// energy(n - kappa, kappa, zalpha).
struct FineStructure {
    double delta_j = 0.0;
    double epsilon = 0.0;
};

inline FineStructure fine_structure(int n, int kappa, double zalpha) {
    if (kappa < 1 || kappa > n) throw std::domain_error("fine_structure: need 1 <= kappa <= n");
    const double g = gamma_j(kappa, zalpha);
    FineStructure fs;
    fs.delta_j = zalpha * zalpha / (kappa + g);
    const double nd = n - fs.delta_j;
    fs.epsilon = nd / std::sqrt(nd * nd + zalpha * zalpha);
    return fs;
}

/// Power-series coefficients of the two independent radial polynomial pairs,
/// built from the quantized-energy recurrences.  Seeds b0^(+-) = 1; d0 fixed
/// by the index-0 coupling.  All arrays have length n_r + 1; for n_r = 0 the
/// (-)/(+) pair is identically zero.
struct RecurrenceCoeffs {
    std::vector<double> b_plus;
    std::vector<double> d_minus;
    std::vector<double> b_minus;
    std::vector<double> d_plus;
};

inline RecurrenceCoeffs coeffs_by_recurrence(int n_r, int kappa, double zalpha) {
    const double g = gamma_j(kappa, zalpha);
    const EnergyTerms et = energy(n_r, kappa, zalpha);
    const double N = et.big_n;
    const double za = zalpha;

    // s = +1 builds b^(+), s = -1 builds b^(-)
    auto b_seq = [&](double s, double b0) {
        std::vector<double> b{b0};
        if (n_r == 0) return b;
        b.push_back(-s * (N + 1.0 - n_r + s * kappa) * (N + n_r - s * kappa) /
                    ((1.0 + 2.0 * g) * (kappa + s * g) * N) * za * b[0]);
        for (int n = 1; n < n_r; ++n)
            b.push_back(2.0 * (n + N + 1.0 - n_r + s * kappa) * (n - n_r) /
                        ((n + 1.0) * (n + 1.0 + 2.0 * g) * (n + N - n_r + s * kappa) * N) * za *
                        b.back());
        return b;
    };
    // s = +1 builds d^(-), s = -1 builds d^(+)
    auto d_seq = [&](double s, double d0) {
        std::vector<double> d{d0};
        if (n_r == 0) return d;
        d.push_back(-(N + n_r - 1.0 + s * kappa) * (N + n_r - s * kappa) /
                    ((1.0 + 2.0 * g) * (N + n_r + g) * N) * za * d[0]);
        for (int n = 1; n < n_r; ++n)
            d.push_back(2.0 * (n + 1.0 - N - n_r - s * kappa) * (n - n_r) /
                        ((n + 1.0) * (n + 1.0 + 2.0 * g) * (n - N - n_r - s * kappa) * N) * za *
                        d.back());
        return d;
    };

    RecurrenceCoeffs rc;
    rc.b_plus = b_seq(+1.0, 1.0);
    rc.d_minus = d_seq(+1.0, -std::sqrt((kappa - g) / (kappa + g)));
    if (n_r == 0) {
        rc.b_minus.assign(1, 0.0);
        rc.d_plus.assign(1, 0.0);
    } else {
        rc.b_minus = b_seq(-1.0, 1.0);
        rc.d_plus = d_seq(-1.0, -std::sqrt((kappa + g) / (kappa - g)));
    }
    return rc;
}

/// The four normalized polynomials in x = 2 Z r / (r_B N), expressed through
/// generalized Laguerre polynomials (L_{-1} == 0).  For n_r = 0 the
/// tilde-P(-) / tilde-Q(+) pair vanishes identically.
struct TildePolys {
    double p_plus = 0.0;
    double q_minus = 0.0;
    double p_minus = 0.0;
    double q_plus = 0.0;
};

inline TildePolys polynomials_laguerre(int n_r, int kappa, double zalpha, double x) {
    const double g = gamma_j(kappa, zalpha);
    const EnergyTerms et = energy(n_r, kappa, zalpha);
    const double ln = gen_laguerre(n_r, 2.0 * g, x);
    const double lm = gen_laguerre(n_r - 1, 2.0 * g, x);
    const double ratio = (n_r + 2.0 * g) / (et.big_n + kappa);

    TildePolys tp;
    tp.p_plus = ln - ratio * lm;
    tp.q_minus = ln + ratio * lm;
    if (n_r > 0) {
        const double c = std::sqrt(n_r * (n_r + 2.0 * g)) / (et.big_n + kappa);
        const double s = std::sqrt((n_r + 2.0 * g) / n_r);
        tp.p_minus = c * ln - s * lm;
        tp.q_plus = c * ln + s * lm;
    }
    return tp;
}

/// Common normalization constant C_{n_r,j}; together with the prefactor
/// (2Z/(r_B N))^{3/2} it makes the assembled bispinor unit-normalized.
/// Depends on (n_r, kappa, Z alpha) only.
inline double normalization_constant(int n_r, int kappa, double zalpha) {
    const double g = gamma_j(kappa, zalpha);
    const EnergyTerms et = energy(n_r, kappa, zalpha);
    return std::sqrt((1.0 + et.epsilon) * (et.big_n + kappa) * factorial(n_r) /
                     (4.0 * et.big_n * gamma_fn(n_r + 1.0 + 2.0 * g)));
}

/// Everything needed to evaluate the radial part of one bound state.
struct RadialSolution {
    int n_r = 0;
    int kappa = 1;
    double zalpha = 0.0;
    double gamma = 0.0;
    double epsilon = 0.0;
    double varkappa = 0.0;
    double big_n = 0.0;
    double norm_c = 0.0;
    RecurrenceCoeffs coeffs;

    /// x = 2 r / N for r in r_B/Z units.
    double x_of_r(double r_bohr) const { return 2.0 * r_bohr / big_n; }
};

inline RadialSolution make_radial_solution(int n_r, int kappa, double zalpha) {
    RadialSolution sol;
    sol.n_r = n_r;
    sol.kappa = kappa;
    sol.zalpha = zalpha;
    sol.gamma = gamma_j(kappa, zalpha);
    const EnergyTerms et = energy(n_r, kappa, zalpha);
    sol.epsilon = et.epsilon;
    sol.varkappa = et.varkappa;
    sol.big_n = et.big_n;
    sol.norm_c = normalization_constant(n_r, kappa, zalpha);
    sol.coeffs = coeffs_by_recurrence(n_r, kappa, zalpha);
    return sol;
}

/// Values of the four radial functions e^{-x/2} x^gamma * tilde-polynomial
/// at r (in r_B/Z units).  Finite at r = 0 for gamma > 0.
struct RadialValues {
    double f_plus = 0.0;
    double g_minus = 0.0;
    double f_minus = 0.0;
    double g_plus = 0.0;
};

inline RadialValues radial_functions(const RadialSolution& sol, double r_bohr) {
    if (r_bohr < 0.0) throw std::domain_error("radial_functions: r must be non-negative");
    const double x = sol.x_of_r(r_bohr);
    const TildePolys tp = polynomials_laguerre(sol.n_r, sol.kappa, sol.zalpha, x);
    const double env = std::exp(-0.5 * x) * std::pow(x, sol.gamma);
    return {env * tp.p_plus, env * tp.q_minus, env * tp.p_minus, env * tp.q_plus};
}

} // namespace dirac
