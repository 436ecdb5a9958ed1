#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dirac/radial.hpp"

namespace dirac {

/// Which pair of the two decoupled first-order radial systems to integrate:
/// plus_minus is (u+, v-), minus_plus is (u-, v+).
enum class RadialBranch { plus_minus, minus_plus };

struct ShootingConfig {
    double xi_min = 1e-6;
    double xi_max = 0.0;       ///< 0 = automatic, 60 / damping
    int steps = 240;           ///< epsilon-scan mesh size for find_spectrum
    double eps_lo = 0.0;       ///< 0 = automatic bracket
    double eps_hi = 0.0;
    double tol_energy = 1e-12;
    double rk_tol = 1e-10;
};

struct ShootingResult {
    double functional = 0.0;  ///< growing-mode coefficient; changes sign at eigenvalues
    double u_end = 0.0;
    double v_end = 0.0;
    double log_amp = 0.0;  ///< accumulated renormalization, ln of the true amplitude scale
    int u_nodes = 0;       ///< interior sign changes of u
};

namespace detail_ode {

struct Sys {
    double kappa, zalpha, eps, vk;  // vk = sqrt(1 - eps^2)
    double s;                       // +1 for (u+, v-), -1 for (u-, v+)

    std::array<double, 2> rhs(double xi, const std::array<double, 2>& y) const {
        const double u = y[0], v = y[1];
        const double cu = kappa / xi, cl = zalpha / xi;
        // -+ s du/dxi + (kappa/xi +- s vk) u + (1 + eps + Za/xi) v = 0
        // -+ s dv/dxi - (kappa/xi -+ s vk) v + (1 - eps - Za/xi) u = 0
        const double du = s * ((cu + s * vk) * u + (1.0 + eps + cl) * v);
        const double dv = s * (-(cu - s * vk) * v + (1.0 - eps - cl) * u);
        return {du, dv};
    }
};

/// One Dormand-Prince 5(4) step; returns the 5th-order solution and an
/// embedded error estimate.
inline void dopri_step(const Sys& sys, double xi, const std::array<double, 2>& y, double h,
                       std::array<double, 2>& y_out, double& err) {
    using V = std::array<double, 2>;
    auto axpy = [](const V& y0, std::initializer_list<std::pair<double, const V*>> terms,
                   double h) {
        V r = y0;
        for (const auto& [a, k] : terms) {
            r[0] += h * a * (*k)[0];
            r[1] += h * a * (*k)[1];
        }
        return r;
    };
    const V k1 = sys.rhs(xi, y);
    const V k2 = sys.rhs(xi + h / 5.0, axpy(y, {{1.0 / 5, &k1}}, h));
    const V k3 = sys.rhs(xi + 3.0 * h / 10.0, axpy(y, {{3.0 / 40, &k1}, {9.0 / 40, &k2}}, h));
    const V k4 = sys.rhs(xi + 4.0 * h / 5.0,
                         axpy(y, {{44.0 / 45, &k1}, {-56.0 / 15, &k2}, {32.0 / 9, &k3}}, h));
    const V k5 = sys.rhs(xi + 8.0 * h / 9.0,
                         axpy(y,
                              {{19372.0 / 6561, &k1},
                               {-25360.0 / 2187, &k2},
                               {64448.0 / 6561, &k3},
                               {-212.0 / 729, &k4}},
                              h));
    const V k6 = sys.rhs(xi + h, axpy(y,
                                      {{9017.0 / 3168, &k1},
                                       {-355.0 / 33, &k2},
                                       {46732.0 / 5247, &k3},
                                       {49.0 / 176, &k4},
                                       {-5103.0 / 18656, &k5}},
                                      h));
    y_out = axpy(y,
                 {{35.0 / 384, &k1},
                  {500.0 / 1113, &k3},
                  {125.0 / 192, &k4},
                  {-2187.0 / 6784, &k5},
                  {11.0 / 84, &k6}},
                 h);
    const V k7 = sys.rhs(xi + h, y_out);
    // difference against the embedded 4th-order solution
    const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    const double er0 = h * (e1 * k1[0] + e3 * k3[0] + e4 * k4[0] + e5 * k5[0] + e6 * k6[0] +
                            e7 * k7[0]);
    const double er1 = h * (e1 * k1[1] + e3 * k3[1] + e4 * k4[1] + e5 * k5[1] + e6 * k6[1] +
                            e7 * k7[1]);
    err = std::sqrt(er0 * er0 + er1 * er1);
}

} // namespace detail_ode

namespace detail_ode {

struct SweepResult {
    std::array<double, 2> y_end{};
    int u_nodes = 0;
    double log_amp = 0.0;
};

/// Adaptive sweep from xi0 to xi1 (either direction), renormalizing the
/// amplitude when it grows large.  Node counting and sampling follow the
/// sweep order.
inline SweepResult sweep(const Sys& sys, double xi0, double xi1, std::array<double, 2> y,
                         double rk_tol,
                         const std::function<void(double, double, double)>& on_sample) {
    SweepResult res;
    const double dir = xi1 > xi0 ? 1.0 : -1.0;
    const double span = std::abs(xi1 - xi0);
    double xi = xi0;
    double h = dir * std::min(0.1 * std::abs(xi0), span / 8.0);
    const double h_max = std::min(0.1 / sys.vk, span / 64.0);
    double prev_u = y[0];
    if (on_sample) on_sample(xi, y[0], y[1]);
    while (dir * (xi1 - xi) > 0.0) {
        if (std::abs(h) > dir * (xi1 - xi)) h = xi1 - xi;
        std::array<double, 2> y_new;
        double err;
        dopri_step(sys, xi, y, h, y_new, err);
        const double y_scale = std::max(
            {std::abs(y[0]), std::abs(y[1]), std::abs(y_new[0]), std::abs(y_new[1]), 1e-30});
        if (err > rk_tol * y_scale && std::abs(h) > 1e-14 * span) {
            h *= std::max(0.2, 0.9 * std::pow(rk_tol * y_scale / err, 0.2));
            continue;
        }
        xi += h;
        y = y_new;
        if (err > 0.0)
            h = dir * std::min({std::abs(h) * std::min(5.0, 0.9 * std::pow(rk_tol * y_scale / err,
                                                                           0.2)),
                                h_max});
        else
            h = dir * std::min(2.0 * std::abs(h), h_max);
        if (std::signbit(y[0]) != std::signbit(prev_u) && dir * (xi1 - xi) > 0.0) ++res.u_nodes;
        prev_u = y[0];
        const double amp = std::max(std::abs(y[0]), std::abs(y[1]));
        if (amp > 1e100) {
            y[0] /= amp;
            y[1] /= amp;
            prev_u = y[0];
            res.log_amp += std::log(amp);
        }
        if (on_sample) on_sample(xi, y[0], y[1]);
    }
    res.y_end = y;
    return res;
}

} // namespace detail_ode

/// Bidirectional shooting: outward from the 2-term series seed at xi_min,
/// inward from the decaying asymptote at xi_max, matched at an interior
/// point past the classical region.  The functional is the normalized
/// Wronskian mismatch; it crosses zero transversally at every eigenvalue
/// and is at the integration-noise level exactly on one.  One-sided
/// integration would bury the zero under the e^{+2 vk xi} contamination.
/// `on_sample` receives the accepted (xi, u, v) of the outward sweep.
inline ShootingResult integrate_radial(
    int kappa, double zalpha, double eps, RadialBranch branch, const ShootingConfig& cfg,
    const std::function<void(double, double, double)>& on_sample = {}) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::domain_error("integrate_radial: eps must lie in (0, 1)");
    const double g = gamma_j(kappa, zalpha);
    const double vk = std::sqrt((1.0 - eps) * (1.0 + eps));
    const double s = branch == RadialBranch::plus_minus ? +1.0 : -1.0;
    detail_ode::Sys sys{double(kappa), zalpha, eps, vk, s};

    // series seed u = xi^g (b0 + b1 xi), v = xi^g (d0 + d1 xi); the index-0
    // coupling fixes d0 and the index-1 linear system (determinant 1 + 2g)
    // fixes (b1, d1) without any square-root branch.
    const double b0 = 1.0;
    const double d0 = -s * (kappa - s * g) / zalpha * b0;  // (g -+ kappa) b0 = +- Za d0
    const double r1 = vk * b0 + s * (1.0 + eps) * d0;
    const double r2 = s * (1.0 - eps) * b0 + vk * d0;
    const double det = 1.0 + 2.0 * g;
    const double b1 = ((1.0 + g + s * kappa) * r1 + s * zalpha * r2) / det;
    const double d1 = (-s * zalpha * r1 + (1.0 + g - s * kappa) * r2) / det;

    const double xi_max = cfg.xi_max > 0.0 ? cfg.xi_max : 60.0 / vk;
    // match beyond the outermost polynomial node, x_match ~ 4 t + 6 with
    // t = Z alpha eps / vk (= n_r + gamma on shell)
    const double t_eff = zalpha * eps / vk;
    const double xi_match =
        std::min(std::max((2.0 * t_eff + 3.0) / vk, 20.0 * cfg.xi_min), 0.7 * xi_max);

    const double scale = std::pow(cfg.xi_min, g);
    std::array<double, 2> y_out{scale * (b0 + b1 * cfg.xi_min), scale * (d0 + d1 * cfg.xi_min)};
    const auto out = detail_ode::sweep(sys, cfg.xi_min, xi_match, y_out, cfg.rk_tol, on_sample);

    // decaying asymptotic direction (1 + eps, -+ vk)
    std::array<double, 2> y_in{1.0 + eps, -s * vk};
    const auto in = detail_ode::sweep(sys, xi_max, xi_match, y_in, cfg.rk_tol, nullptr);

    ShootingResult res;
    res.u_nodes = out.u_nodes;
    res.u_end = out.y_end[0];
    res.v_end = out.y_end[1];
    res.log_amp = out.log_amp;
    const double denom = (std::abs(out.y_end[0]) + std::abs(out.y_end[1])) *
                         (std::abs(in.y_end[0]) + std::abs(in.y_end[1]));
    res.functional =
        denom > 0.0
            ? (out.y_end[0] * in.y_end[1] - out.y_end[1] * in.y_end[0]) / denom
            : 0.0;
    return res;
}

/// Lowest n_r_max + 1 eigenvalues of the branch by scanning the shooting
/// functional over an effective-quantum-number mesh and bisecting each sign
/// change.  Matches the closed-form spectrum independently of it.
inline std::vector<double> find_spectrum(int kappa, double zalpha, int n_r_max,
                                         const ShootingConfig& cfg = {},
                                         RadialBranch branch = RadialBranch::plus_minus) {
    const double g = gamma_j(kappa, zalpha);
    auto eps_of_t = [&](double t) { return t / std::sqrt(t * t + zalpha * zalpha); };
    double t_lo = 0.85 * g;
    // the (-,+) pair has no n_r = 0 solution; its lowest roots start at n_r = 1
    double t_hi = n_r_max + g + 0.6 + (branch == RadialBranch::minus_plus ? 1.0 : 0.0);
    if (cfg.eps_lo > 0.0) t_lo = zalpha * cfg.eps_lo / std::sqrt(1.0 - cfg.eps_lo * cfg.eps_lo);
    if (cfg.eps_hi > 0.0) t_hi = zalpha * cfg.eps_hi / std::sqrt(1.0 - cfg.eps_hi * cfg.eps_hi);

    auto f_of_t = [&](double t) {
        return integrate_radial(kappa, zalpha, eps_of_t(t), branch, cfg).functional;
    };

    std::vector<double> roots;
    const int n_mesh = std::max(cfg.steps, 8);
    double t_prev = t_lo, f_prev = f_of_t(t_lo);
    for (int i = 1; i <= n_mesh && static_cast<int>(roots.size()) <= n_r_max; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / n_mesh;
        const double f = f_of_t(t);
        if (std::signbit(f) != std::signbit(f_prev)) {
            double a = t_prev, b = t, fa = f_prev;
            while (eps_of_t(b) - eps_of_t(a) > cfg.tol_energy) {
                const double m = 0.5 * (a + b);
                const double fm = f_of_t(m);
                if (std::signbit(fm) == std::signbit(fa)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            roots.push_back(eps_of_t(0.5 * (a + b)));
        }
        t_prev = t;
        f_prev = f;
    }
    if (static_cast<int>(roots.size()) < n_r_max + 1)
        throw std::runtime_error(
            "find_spectrum: missed a bracket; refine the mesh (ShootingConfig::steps)");
    roots.resize(n_r_max + 1);
    return roots;
}

} // namespace dirac
