#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "dirac/half_int.hpp"
#include "dirac/quadrature.hpp"
#include "dirac/specfun.hpp"

namespace dirac {

using Complex = std::complex<double>;

/// Two-component spinor value at one angular point.
struct SpinorSample {
    Complex up{};
    Complex down{};

    SpinorSample operator+(const SpinorSample& o) const { return {up + o.up, down + o.down}; }
    SpinorSample operator-(const SpinorSample& o) const { return {up - o.up, down - o.down}; }
    SpinorSample operator*(Complex z) const { return {up * z, down * z}; }
    friend SpinorSample operator*(Complex z, const SpinorSample& s) { return s * z; }
};

inline double norm_max(const SpinorSample& s) {
    return std::max(std::abs(s.up), std::abs(s.down));
}

/// Label of a spherical spinor chi_{l, m_j, +/-}.
///
/// parity +1: eigenvalue of the spin-orbit operator is +(l+1), j = l + 1/2.
/// parity -1: eigenvalue is -l, j = l - 1/2 (requires l >= 1).
struct SpinorLabel {
    int l = 0;
    HalfInt m_j{1};
    int parity = +1;

    bool valid() const {
        if (l < 0 || (parity != +1 && parity != -1)) return false;
        if (!m_j.is_half_odd()) return false;
        const int two_j = parity > 0 ? 2 * l + 1 : 2 * l - 1;
        if (two_j < 1) return false;  // parity - needs l >= 1
        return m_j.abs().twice() <= two_j;
    }
    int two_j() const { return parity > 0 ? 2 * l + 1 : 2 * l - 1; }
    int m1() const { return m_j.minus_half(); }
    int m2() const { return m_j.plus_half(); }
    /// Eigenvalue of Lambda = sigma.L + 1 on this spinor.
    int lambda_eigenvalue() const { return parity > 0 ? l + 1 : -l; }
};

namespace detail {

inline Complex i_pow(int l) {
    switch (((l % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

/// Condon-Shortley phase applied only for positive m; together with the
/// unsigned assoc_legendre this reproduces the printed spinor components
/// (pinned by the sigma_r ladder relations, which are phase sensitive).
inline double cs_phase(int m) { return (m > 0 && (m % 2 != 0)) ? -1.0 : 1.0; }

/// sqrt((l-|m|)! / (l+|m|)!)
inline double fact_ratio_sqrt(int l, int m) {
    const int mm = std::abs(m);
    return std::exp(0.5 * (log_gamma(l - mm + 1.0) - log_gamma(l + mm + 1.0)));
}

/// theta-dependent part of component nu (linear_factor under the sqrt may
/// vanish at the |m_j| = j edge, where the component is exactly zero).
inline double chi_component_theta(int l, int m, double linear_factor, double cos_theta) {
    if (std::abs(m) > l || linear_factor <= 0.0) return 0.0;
    return std::sqrt(linear_factor / (4.0 * std::numbers::pi)) * fact_ratio_sqrt(l, m) *
           cs_phase(m) * assoc_legendre(l, m, cos_theta);
}

} // namespace detail

/// theta-profiles of both components of chi_{l,m_j,+/-}; the full spinor is
/// (f1(theta) e^{i m1 phi}, f2(theta) e^{i m2 phi}) with the i^l phase folded in.
struct SpinorThetaParts {
    int m1 = 0;
    int m2 = 0;
    std::function<Complex(double)> f1;
    std::function<Complex(double)> f2;
};

inline SpinorThetaParts spinor_theta_parts(const SpinorLabel& lab) {
    if (!lab.valid()) throw std::invalid_argument("spherical_spinor: invalid label");
    const int l = lab.l, m1 = lab.m1(), m2 = lab.m2();
    const Complex phase = detail::i_pow(l);
    double a1, a2, sign1;
    if (lab.parity > 0) {
        a1 = l + 1.0 + m1;
        a2 = l + 1.0 - m2;
        sign1 = 1.0;
    } else {
        a1 = l - static_cast<double>(m1);
        a2 = l + static_cast<double>(m2);
        sign1 = -1.0;
    }
    SpinorThetaParts parts;
    parts.m1 = m1;
    parts.m2 = m2;
    parts.f1 = [=](double th) {
        return phase * (sign1 * detail::chi_component_theta(l, m1, a1, std::cos(th)));
    };
    parts.f2 = [=](double th) {
        return phase * detail::chi_component_theta(l, m2, a2, std::cos(th));
    };
    return parts;
}

/// Spherical spinor chi_{l, m_j, +/-} at (theta, phi).
inline SpinorSample spherical_spinor(const SpinorLabel& lab, double theta, double phi) {
    const auto parts = spinor_theta_parts(lab);
    const Complex e1 = std::exp(Complex(0.0, parts.m1 * phi));
    const Complex e2 = std::exp(Complex(0.0, parts.m2 * phi));
    return {parts.f1(theta) * e1, parts.f2(theta) * e2};
}

/// The matrix sigma_r = sigma . r/r at (theta, phi); squares to the identity
/// and anticommutes with Lambda.
inline SpinorSample apply_sigma_r(const SpinorSample& s, double theta, double phi) {
    const double c = std::cos(theta), sn = std::sin(theta);
    const Complex em = std::exp(Complex(0.0, -phi));
    const Complex ep = std::exp(Complex(0.0, phi));
    return {c * s.up + em * sn * s.down, ep * sn * s.up - c * s.down};
}

/// Lambda = sigma.L + 1 on an azimuthally reduced spinor, given the value f0
/// and the theta-derivative dth of its two theta-profiles at theta.
/// Reduced components: (u(theta) e^{i m1 phi}, d(theta) e^{i m2 phi}); the
/// phi-derivatives are taken analytically (multiplication by i m_nu).
inline SpinorSample lambda_terms(int m1, int m2, const SpinorSample& f0, const SpinorSample& dth,
                                 double theta) {
    const double cot = std::cos(theta) / std::sin(theta);
    SpinorSample out;
    out.up = (m1 + 1.0) * f0.up - dth.down - m2 * cot * f0.down;
    out.down = dth.up - m1 * cot * f0.up + (1.0 - m2) * f0.down;
    return out;
}

constexpr double kPoleClamp = 1e-6;

/// Numerical application of Lambda to separable spinor data at (theta, phi):
/// analytic phi-derivatives, 5-point central differences in theta.
/// theta is clamped away from the poles for the derivative stencil.
inline SpinorSample apply_lambda(const SpinorThetaParts& f, double theta, double phi,
                                 double h = 1e-4) {
    const double pi = std::numbers::pi;
    const double th = std::clamp(theta, kPoleClamp, pi - kPoleClamp);
    auto at = [&](double t) { return SpinorSample{f.f1(t), f.f2(t)}; };
    const SpinorSample f0 = at(th);
    const SpinorSample dth =
        (at(th - 2 * h) - 8.0 * at(th - h) + 8.0 * at(th + h) - at(th + 2 * h)) * (1.0 / (12.0 * h));
    SpinorSample red = lambda_terms(f.m1, f.m2, f0, dth, th);
    const Complex e1 = std::exp(Complex(0.0, f.m1 * phi));
    const Complex e2 = std::exp(Complex(0.0, f.m2 * phi));
    return {red.up * e1, red.down * e2};
}

/// <a|b> over the sphere: Gauss-Legendre in cos(theta), uniform trapezoid in
/// phi (exact for periodic integrands up to the node count).
inline Complex angular_inner_product(const SpinorLabel& a, const SpinorLabel& b,
                                     const QuadratureRule& cos_theta_rule, int n_phi) {
    if (cos_theta_rule.kind != QuadKind::legendre)
        throw std::invalid_argument("angular_inner_product: need a Legendre rule in cos(theta)");
    if (n_phi < 1) throw std::invalid_argument("angular_inner_product: n_phi must be >= 1");
    const double pi = std::numbers::pi;
    Complex acc = 0.0;
    for (int i = 0; i < cos_theta_rule.order(); ++i) {
        const double th = std::acos(cos_theta_rule.nodes[i]);
        const double wth = cos_theta_rule.weights[i];
        for (int k = 0; k < n_phi; ++k) {
            const double ph = 2.0 * pi * k / n_phi;
            const SpinorSample sa = spherical_spinor(a, th, ph);
            const SpinorSample sb = spherical_spinor(b, th, ph);
            acc += wth * (2.0 * pi / n_phi) *
                   (std::conj(sa.up) * sb.up + std::conj(sa.down) * sb.down);
        }
    }
    return acc;
}

} // namespace dirac
