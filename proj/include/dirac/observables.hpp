#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirac/bispinor.hpp"

namespace dirac {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double a) const { return {a * x, a * y, a * z}; }
    friend Vec3 operator*(double a, const Vec3& v) { return v * a; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
};

inline Vec3 e_r(double th, double ph) {
    return {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
}
inline Vec3 e_theta(double th, double ph) {
    return {std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th)};
}
inline Vec3 e_phi(double ph) { return {-std::sin(ph), std::cos(ph), 0.0}; }
inline Vec3 e_rho(double ph) { return {std::cos(ph), std::sin(ph), 0.0}; }

/// psi^dagger sigma psi for a 2-spinor.
inline Vec3 sigma_expectation(const SpinorSample& s) {
    const Complex u = std::conj(s.up) * s.down;
    return {2.0 * u.real(), 2.0 * u.imag(), std::norm(s.up) - std::norm(s.down)};
}

/// |Psi|^2 of a 4-component sample (the small-spinor factor is already
/// folded into the lower components during assembly).
inline double density_of(const BispinorSample& s) { return s.norm_sq(); }

/// Psi^dagger Sigma Psi of a 4-component sample.
inline Vec3 sigma_expectation(const BispinorSample& s) {
    return sigma_expectation(s.upper()) + sigma_expectation(s.lower());
}

/// Probability density and unit spin-orientation field on a grid.
/// `pauli` selects the nonrelativistic reduction (upper spinor only, where
/// the orientation vector is unit by construction); the exact relativistic
/// form is the default.
struct ObservableField {
    QuantumNumbers qn;
    SpinParams sp;
    PhysicalConfig cfg;
    Grid3 grid;
    bool pauli = false;
    std::vector<double> w;
    std::vector<Vec3> s;
};

constexpr double kDensityFloor = 1e-300;

inline Vec3 undefined_spin() {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan, nan};
}

/// w per node of an assembled field.
inline std::vector<double> density(const BispinorField& f) {
    std::vector<double> w(f.samples.size());
    for (std::size_t i = 0; i < f.samples.size(); ++i) w[i] = density_of(f.samples[i]);
    return w;
}

/// s = (Psi^dagger Sigma Psi) / w per node; undefined where w underflows.
inline std::vector<Vec3> spin_field(const BispinorField& f) {
    std::vector<Vec3> s(f.samples.size());
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        const double w = density_of(f.samples[i]);
        s[i] = (w > kDensityFloor) ? sigma_expectation(f.samples[i]) * (1.0 / w)
                                   : undefined_spin();
    }
    return s;
}

inline ObservableField make_observable_field(const BoundState& state, const Grid3& grid,
                                             bool pauli = false) {
    ObservableField of;
    of.qn = state.qn();
    of.sp = state.spin_params();
    of.cfg = state.config();
    of.grid = grid;
    of.pauli = pauli;
    of.w.resize(grid.size());
    of.s.resize(grid.size());
    for (std::size_t ir = 0; ir < grid.r.size(); ++ir)
        for (std::size_t it = 0; it < grid.theta.size(); ++it)
            for (std::size_t ip = 0; ip < grid.phi.size(); ++ip) {
                const std::size_t idx = grid.index(ir, it, ip);
                double w;
                Vec3 sv;
                if (pauli) {
                    const SpinorSample p =
                        state.pauli_sample(grid.r[ir], grid.theta[it], grid.phi[ip]);
                    w = std::norm(p.up) + std::norm(p.down);
                    sv = sigma_expectation(p);
                } else {
                    const BispinorSample b =
                        state.sample(grid.r[ir], grid.theta[it], grid.phi[ip]);
                    w = density_of(b);
                    sv = sigma_expectation(b);
                }
                of.w[idx] = w;
                of.s[idx] = (w > kDensityFloor) ? sv * (1.0 / w) : undefined_spin();
            }
    return of;
}

/// Pointwise density of one state (exact or Pauli), for scans and sums.
inline double density_at(const BoundState& state, bool pauli, double r, double th, double ph) {
    if (pauli) {
        const SpinorSample p = state.pauli_sample(r, th, ph);
        return std::norm(p.up) + std::norm(p.down);
    }
    return density_of(state.sample(r, th, ph));
}

/// Hartree shell sum: the densities of the top fine-structure level
/// (j = n - 1/2, i.e. n_r = 0) summed over m_j = +1/2 ... +j.  Exactly
/// spherically symmetric.
inline double hartree_shell_sum(int n, const PhysicalConfig& cfg, bool pauli, double r,
                                double th, double ph = 0.0) {
    if (n < 1) throw std::domain_error("hartree_shell_sum: n must be >= 1");
    double acc = 0.0;
    for (int two_mj = 1; two_mj <= 2 * n - 1; two_mj += 2) {
        const BoundState state({0, n, HalfInt(two_mj), +1}, {}, cfg);
        acc += density_at(state, pauli, r, th, ph);
    }
    return acc;
}

/// All valid state labels with principal number n (n_r = 0 exposes sigma = + only).
inline std::vector<QuantumNumbers> enumerate_states(int n) {
    if (n < 1) throw std::domain_error("enumerate_states: n must be >= 1");
    std::vector<QuantumNumbers> out;
    for (int kappa = 1; kappa <= n; ++kappa) {
        const int n_r = n - kappa;
        for (int two_mj = -(2 * kappa - 1); two_mj <= 2 * kappa - 1; two_mj += 2) {
            out.push_back({n_r, kappa, HalfInt(two_mj), +1});
            if (n_r > 0) out.push_back({n_r, kappa, HalfInt(two_mj), -1});
        }
    }
    return out;
}

/// Number of states sharing n; equals 2 n^2 (the j = n - 1/2 level is 2n-fold
/// degenerate, every lower level 4 (n - n_r)-fold).
inline int degeneracy_count(int n) { return static_cast<int>(enumerate_states(n).size()); }

/// rho_n(r) = (2Z/(n r_B))^3 e^{-r_n} r_n^{2(n-1)} / (2n)!, r in r_B/Z units.
inline double rho_n(int n, double r) {
    const double rn = 2.0 * r / n;
    const double pref = std::pow(2.0 / n, 3) / factorial(2 * n);
    return pref * std::exp(-rn) * std::pow(rn, 2 * (n - 1));
}

enum class ReferenceTag { s1, s2_darwin, p2_darwin, level2_j32 };

inline ReferenceTag reference_tag_from_string(const std::string& s) {
    if (s == "1s") return ReferenceTag::s1;
    if (s == "2s_darwin") return ReferenceTag::s2_darwin;
    if (s == "2p_darwin") return ReferenceTag::p2_darwin;
    if (s == "2_3/2_mj") return ReferenceTag::level2_j32;
    throw std::invalid_argument("unknown reference tag: " + s);
}

struct ReferencePoint {
    double w = 0.0;
    Vec3 s;
};

/// Closed-form nonrelativistic densities and spin orientations of the n = 1
/// and n = 2 states, used as regression oracles for the assembled fields.
inline ReferencePoint reference_state(ReferenceTag tag, int two_mj, double r, double th,
                                      double ph = 0.0) {
    const double pi = std::numbers::pi;
    const double sgn = two_mj > 0 ? 1.0 : -1.0;
    const Vec3 ez{0.0, 0.0, 1.0};
    switch (tag) {
        case ReferenceTag::s1: {
            if (std::abs(two_mj) != 1) throw std::invalid_argument("1s: m_j must be +-1/2");
            return {rho_n(1, r) / (4.0 * pi), sgn * ez};
        }
        case ReferenceTag::s2_darwin: {
            if (std::abs(two_mj) != 1) throw std::invalid_argument("2s: m_j must be +-1/2");
            const double r2 = r;  // 2Zr/(n r_B) with n = 2
            const double w = std::exp(-r2) * std::pow(1.0 - 0.5 * r2, 2) / (8.0 * pi);
            return {w, sgn * ez};
        }
        case ReferenceTag::p2_darwin: {
            if (std::abs(two_mj) != 1) throw std::invalid_argument("2p: m_j must be +-1/2");
            const double r2 = r;
            const double w = std::exp(-r2) * r2 * r2 / (96.0 * pi);
            return {w, sgn * (std::cos(th) * e_r(th, ph) + std::sin(th) * e_theta(th, ph))};
        }
        case ReferenceTag::level2_j32: {
            const double c = std::cos(th), sn = std::sin(th);
            if (std::abs(two_mj) == 3) {
                return {3.0 / (8.0 * pi) * rho_n(2, r) * sn * sn, sgn * ez};
            }
            if (std::abs(two_mj) == 1) {
                const double w = rho_n(2, r) * (1.0 + 3.0 * c * c) / (8.0 * pi);
                const Vec3 s = (1.0 / (1.0 + 3.0 * c * c)) *
                               ((5.0 * c * c - 1.0) * ez -
                                2.0 * std::sin(2.0 * th) * e_rho(ph));
                return {w, sgn * s};
            }
            throw std::invalid_argument("2_3/2: m_j must be +-1/2 or +-3/2");
        }
    }
    throw std::invalid_argument("reference_state: unknown tag");
}

} // namespace dirac
