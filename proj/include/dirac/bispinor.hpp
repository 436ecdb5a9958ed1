#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirac/angular.hpp"
#include "dirac/radial.hpp"

namespace dirac {

/// Free spin parameters (theta, phi) selecting one member of the
/// generalized-invariant eigenstate family.
struct SpinParams {
    double theta = 0.0;
    double phi = 0.0;
};

enum class InvariantCase { darwin, jl, bel };

/// Spin parameters of the three named eigenbases.
inline SpinParams special_case(InvariantCase kind) {
    constexpr double pi4 = std::numbers::pi / 4.0;
    switch (kind) {
        case InvariantCase::darwin: return {0.0, 0.0};
        case InvariantCase::jl: return {pi4, -pi4};
        case InvariantCase::bel: return {pi4, 0.0};
    }
    throw std::invalid_argument("special_case: unknown kind");
}

inline InvariantCase invariant_case_from_string(const std::string& s) {
    if (s == "darwin") return InvariantCase::darwin;
    if (s == "jl") return InvariantCase::jl;
    if (s == "bel") return InvariantCase::bel;
    throw std::invalid_argument("unknown invariant case: " + s);
}

struct BetaPair {
    Complex beta1{};
    Complex beta2{};
};

/// (beta1, beta2) with |beta1|^2 + |beta2|^2 = 1 identically; sigma = -1 is
/// the orthogonal companion (-beta2*, beta1*) of the sigma = +1 pair.
inline BetaPair beta_coeffs(int sigma, const SpinParams& sp) {
    const Complex ep = std::exp(Complex(0.0, sp.phi));
    const Complex em = std::exp(Complex(0.0, -sp.phi));
    if (sigma >= 0) return {ep * std::cos(sp.theta), em * std::sin(sp.theta)};
    return {-ep * std::sin(sp.theta), em * std::cos(sp.theta)};
}

/// Four-component value at one point; components 1,2 form the upper spinor,
/// 3,4 the lower one (the small-spinor factor is already folded in).
struct BispinorSample {
    std::array<Complex, 4> c{};

    SpinorSample upper() const { return {c[0], c[1]}; }
    SpinorSample lower() const { return {c[2], c[3]}; }

    BispinorSample operator+(const BispinorSample& o) const {
        return {{c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2], c[3] + o.c[3]}};
    }
    BispinorSample operator-(const BispinorSample& o) const {
        return {{c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2], c[3] - o.c[3]}};
    }
    BispinorSample operator*(Complex z) const {
        return {{c[0] * z, c[1] * z, c[2] * z, c[3] * z}};
    }
    friend BispinorSample operator*(Complex z, const BispinorSample& s) { return s * z; }

    double abs_max() const {
        double m = 0.0;
        for (const auto& z : c) m = std::max(m, std::abs(z));
        return m;
    }
    double norm_sq() const {
        double m = 0.0;
        for (const auto& z : c) m += std::norm(z);
        return m;
    }
};

inline Complex dot(const BispinorSample& a, const BispinorSample& b) {
    Complex s = 0.0;
    for (int i = 0; i < 4; ++i) s += std::conj(a.c[i]) * b.c[i];
    return s;
}

inline bool is_singular(const BispinorSample& s) {
    for (const auto& z : s.c)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return true;
    return false;
}

/// One fully-specified bound state, ready for pointwise evaluation.
/// Field values are in (Z/r_B)^{3/2} units and r in r_B/Z units, so that
/// the norm integral over the dimensionless grid equals one.
class BoundState {
  public:
    BoundState(const QuantumNumbers& qn, const SpinParams& sp, const PhysicalConfig& cfg)
        : qn_(qn), sp_(sp), cfg_(cfg) {
        qn_.validate();
        if (!(cfg.zalpha() < qn.kappa))
            throw std::domain_error("BoundState: Z*alpha must be below kappa");
        radial_ = make_radial_solution(qn.n_r, qn.kappa, cfg.zalpha());
        // n_r = 0: the polynomial pair of the second normal mode vanishes and
        // the spin parameters drop out; the state is the sigma = + one.
        beta_ = (qn.n_r == 0) ? BetaPair{1.0, 0.0} : beta_coeffs(qn.sigma, sp);
        chi_plus_ = spinor_theta_parts({qn.kappa - 1, qn.m_j, +1});
        chi_minus_ = spinor_theta_parts({qn.kappa, qn.m_j, -1});
    }

    const QuantumNumbers& qn() const { return qn_; }
    const SpinParams& spin_params() const { return sp_; }
    const PhysicalConfig& config() const { return cfg_; }
    const RadialSolution& radial() const { return radial_; }
    const BetaPair& beta() const { return beta_; }
    int m1() const { return qn_.m_j.minus_half(); }
    int m2() const { return qn_.m_j.plus_half(); }

    /// Components with the e^{i m_nu phi} factors stripped; orders are
    /// (m1, m2, m1, m2).  Pointwise evaluation for operator machinery.
    BispinorSample reduced_sample(double r_bohr, double theta) const {
        const double x = radial_.x_of_r(r_bohr);
        const TildePolys tp = polynomials_laguerre(qn_.n_r, qn_.kappa, radial_.zalpha, x);
        const double pref = std::pow(2.0 / radial_.big_n, 1.5) * radial_.norm_c *
                            std::exp(-0.5 * x) * std::pow(x, radial_.gamma - 1.0);
        const double small = std::sqrt((1.0 - radial_.epsilon) / (1.0 + radial_.epsilon));
        const SpinorSample cp{chi_plus_.f1(theta), chi_plus_.f2(theta)};
        const SpinorSample cm{chi_minus_.f1(theta), chi_minus_.f2(theta)};
        const SpinorSample up = beta_.beta1 * tp.p_plus * cp + beta_.beta2 * tp.p_minus * cm;
        const SpinorSample dn =
            (beta_.beta2 * tp.q_plus * cp - beta_.beta1 * tp.q_minus * cm) * small;
        return {{pref * up.up, pref * up.down, pref * dn.up, pref * dn.down}};
    }

    BispinorSample sample(double r_bohr, double theta, double phi) const {
        BispinorSample s = reduced_sample(r_bohr, theta);
        const Complex e1 = std::exp(Complex(0.0, m1() * phi));
        const Complex e2 = std::exp(Complex(0.0, m2() * phi));
        s.c[0] *= e1;
        s.c[1] *= e2;
        s.c[2] *= e1;
        s.c[3] *= e2;
        return s;
    }

    /// Nonrelativistic (Pauli) limit: the upper spinor built from the exact
    /// radial profiles, lower spinor dropped.
    SpinorSample pauli_sample(double r_bohr, double theta, double phi) const {
        const double x = radial_.x_of_r(r_bohr);
        const TildePolys tp = polynomials_laguerre(qn_.n_r, qn_.kappa, radial_.zalpha, x);
        const double pref = std::pow(2.0 / radial_.big_n, 1.5) * radial_.norm_c *
                            std::exp(-0.5 * x) * std::pow(x, radial_.gamma - 1.0);
        const SpinorSample cp = spherical_spinor({qn_.kappa - 1, qn_.m_j, +1}, theta, phi);
        const SpinorSample cm = spherical_spinor({qn_.kappa, qn_.m_j, -1}, theta, phi);
        return (beta_.beta1 * tp.p_plus * cp + beta_.beta2 * tp.p_minus * cm) * Complex(pref);
    }

  private:
    QuantumNumbers qn_;
    SpinParams sp_;
    PhysicalConfig cfg_;
    RadialSolution radial_;
    BetaPair beta_;
    SpinorThetaParts chi_plus_, chi_minus_;
};

/// Tensor-product grid with volume weights: generalized Gauss-Laguerre in
/// the scaled radius, Gauss-Legendre in cos(theta), uniform in phi.
struct Grid3 {
    std::vector<double> r;
    std::vector<double> theta;
    std::vector<double> phi;
    std::vector<double> w_r;      // includes the r^2 dr measure
    std::vector<double> w_theta;  // includes the sin(theta) dtheta measure
    double w_phi = 0.0;

    std::size_t size() const { return r.size() * theta.size() * phi.size(); }
    std::size_t index(std::size_t ir, std::size_t it, std::size_t ip) const {
        return (ir * theta.size() + it) * phi.size() + ip;
    }
    double weight(std::size_t ir, std::size_t it) const { return w_r[ir] * w_theta[it] * w_phi; }

    bool same_as(const Grid3& o) const {
        return r == o.r && theta == o.theta && phi == o.phi && w_r == o.w_r &&
               w_theta == o.w_theta && w_phi == o.w_phi;
    }
};

/// Radial grid adapted to one state: Laguerre weight x^{2 gamma} e^{-x}
/// absorbs the bispinor envelope, so the norm integrand is a polynomial.
inline Grid3 make_state_grid(const RadialSolution& sol, int n_radial = 64, int n_theta = 32,
                             int n_phi = 32) {
    Grid3 g;
    const QuadratureRule lag = make_gauss_laguerre(n_radial, 2.0 * sol.gamma);
    const QuadratureRule leg = make_gauss_legendre(n_theta);
    const double half_n = 0.5 * sol.big_n;
    g.r.resize(n_radial);
    g.w_r.resize(n_radial);
    for (int i = 0; i < n_radial; ++i) {
        const double x = lag.nodes[i];
        g.r[i] = half_n * x;
        // w * e^x * x^{-2 gamma} * (N/2)^3 * x^2, assembled in log form
        g.w_r[i] = std::exp(std::log(lag.weights[i]) + x - 2.0 * sol.gamma * std::log(x)) *
                   half_n * half_n * half_n * x * x;
    }
    g.theta.resize(n_theta);
    g.w_theta.resize(n_theta);
    for (int k = 0; k < n_theta; ++k) {
        g.theta[k] = std::acos(leg.nodes[k]);
        g.w_theta[k] = leg.weights[k];
    }
    g.phi.resize(n_phi);
    for (int m = 0; m < n_phi; ++m) g.phi[m] = 2.0 * std::numbers::pi * m / n_phi;
    g.w_phi = 2.0 * std::numbers::pi / n_phi;
    return g;
}

/// Sampled bispinor on a grid, with enough metadata to serialize.
struct BispinorField {
    QuantumNumbers qn;
    SpinParams sp;
    PhysicalConfig cfg;
    Grid3 grid;
    std::vector<BispinorSample> samples;
};

inline BispinorField assemble_field(const BoundState& state, const Grid3& grid) {
    BispinorField f;
    f.qn = state.qn();
    f.sp = state.spin_params();
    f.cfg = state.config();
    f.grid = grid;
    f.samples.resize(grid.size());
    for (std::size_t ir = 0; ir < grid.r.size(); ++ir)
        for (std::size_t it = 0; it < grid.theta.size(); ++it) {
            const BispinorSample red = state.reduced_sample(grid.r[ir], grid.theta[it]);
            for (std::size_t ip = 0; ip < grid.phi.size(); ++ip) {
                const double ph = grid.phi[ip];
                const Complex e1 = std::exp(Complex(0.0, state.m1() * ph));
                const Complex e2 = std::exp(Complex(0.0, state.m2() * ph));
                BispinorSample s = red;
                s.c[0] *= e1;
                s.c[1] *= e2;
                s.c[2] *= e1;
                s.c[3] *= e2;
                f.samples[grid.index(ir, it, ip)] = s;
            }
        }
    return f;
}

inline BispinorField assemble_field(const QuantumNumbers& qn, const SpinParams& sp,
                                    const PhysicalConfig& cfg, int n_radial = 64,
                                    int n_theta = 32, int n_phi = 32) {
    const BoundState state(qn, sp, cfg);
    return assemble_field(state, make_state_grid(state.radial(), n_radial, n_theta, n_phi));
}

/// Quadrature inner product <a|b> = sum_i w_i a_i^dagger b_i.
inline Complex inner_product(const BispinorField& a, const BispinorField& b) {
    if (!a.grid.same_as(b.grid)) throw std::invalid_argument("inner_product: grid mismatch");
    Complex acc = 0.0;
    for (std::size_t ir = 0; ir < a.grid.r.size(); ++ir)
        for (std::size_t it = 0; it < a.grid.theta.size(); ++it) {
            const double w = a.grid.weight(ir, it);
            Complex cell = 0.0;
            for (std::size_t ip = 0; ip < a.grid.phi.size(); ++ip) {
                const std::size_t idx = a.grid.index(ir, it, ip);
                cell += dot(a.samples[idx], b.samples[idx]);
            }
            acc += w * cell;
        }
    return acc;
}

inline double norm(const BispinorField& a) { return std::sqrt(inner_product(a, a).real()); }

} // namespace dirac
