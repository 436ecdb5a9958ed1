#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dirac/bispinor.hpp"

namespace dirac {

enum class OperatorKind { H, Jz, Jsq, ID, IJL, IBEL };

inline const char* operator_name(OperatorKind k) {
    switch (k) {
        case OperatorKind::H: return "H";
        case OperatorKind::Jz: return "Jz";
        case OperatorKind::Jsq: return "Jsq";
        case OperatorKind::ID: return "ID";
        case OperatorKind::IJL: return "IJL";
        case OperatorKind::IBEL: return "IBEL";
    }
    return "?";
}

/// Azimuthally reduced bispinor function: the full components are
/// hat_c[nu](r, theta) * e^{i m_nu phi} with orders (m1, m1+1, m1, m1+1).
/// Every operator here commutes with J_z, so the structure is preserved and
/// all phi-derivatives are analytic.  `depth` counts the finite-difference
/// nesting already applied; composed operators enlarge their steps with it.
/// `r_scale` is the radial variation scale of the function (r_B/Z units);
/// radial steps are proportional to min(r, r_scale).
struct ReducedBispinorFn {
    int m1 = 0;
    int depth = 0;
    double r_scale = 1.0;
    std::function<BispinorSample(double r, double theta)> eval;
};

/// Numerical application of the invariant operators.  fd_step is the base
/// step fraction at nesting depth 0; deeper levels grow it geometrically to
/// keep roundoff amplification below the truncation budget.
struct OperatorHandle {
    OperatorKind kind = OperatorKind::H;
    double fd_step = 8e-3;
};

namespace fd {

/// Step fraction for a differentiation applied at the given nesting depth.
inline double graded_step(double base, int depth) {
    static const double factor[] = {1.0, 2.5, 4.4, 7.5, 12.5, 20.0};
    return base * factor[std::min(depth, 5)];
}

/// 7-point central first derivative (order h^6).
template <typename F>
auto deriv7(F&& f, double h) -> decltype(f(0.0)) {
    return (f(3.0 * h) - f(-3.0 * h) + 9.0 * (f(-2.0 * h) - f(2.0 * h)) +
            45.0 * (f(h) - f(-h))) *
           Complex(1.0 / (60.0 * h));
}

} // namespace fd

inline SpinorSample upper_of(const BispinorSample& s) { return {s.c[0], s.c[1]}; }
inline SpinorSample lower_of(const BispinorSample& s) { return {s.c[2], s.c[3]}; }
inline BispinorSample join(const SpinorSample& u, const SpinorSample& d) {
    return {{u.up, u.down, d.up, d.down}};
}

/// sigma_r on an azimuthally reduced 2-spinor: the e^{+-i phi} factors of the
/// matrix cancel against the component orders, leaving a real matrix.
inline SpinorSample sigma_r_reduced(const SpinorSample& s, double theta) {
    const double c = std::cos(theta), sn = std::sin(theta);
    return {c * s.up + sn * s.down, sn * s.up - c * s.down};
}

namespace detail_op {

struct Steps {
    double h_theta;
    double h_r_frac;
    double r_floor;
    double r_cap;

    double h_r(double r) const { return h_r_frac * std::min(std::max(r, r_floor), r_cap); }
};

inline Steps steps_for(const ReducedBispinorFn& f, double base) {
    const double h = fd::graded_step(base, f.depth);
    return {h, h, 0.02 * f.r_scale, f.r_scale};
}

/// Lambda = sigma.L + 1, block-applied to the upper and lower 2-spinors with
/// signs (su, sd).  One theta-differentiation level.
inline ReducedBispinorFn lambda_blocks(const ReducedBispinorFn& f, double su, double sd,
                                       double base_step) {
    const Steps st = steps_for(f, base_step);
    const int m1 = f.m1, m2 = f.m1 + 1;
    auto inner = f.eval;
    ReducedBispinorFn out;
    out.m1 = f.m1;
    out.depth = f.depth + 1;
    out.r_scale = f.r_scale;
    out.eval = [=](double r, double th) {
        const BispinorSample f0 = inner(r, th);
        const BispinorSample dth =
            fd::deriv7([&](double s) { return inner(r, th + s); }, st.h_theta);
        const SpinorSample lu = lambda_terms(m1, m2, upper_of(f0), upper_of(dth), th);
        const SpinorSample ld = lambda_terms(m1, m2, lower_of(f0), lower_of(dth), th);
        return join(su * lu, sd * ld);
    };
    return out;
}

/// sigma.p as (p_r - (i/r) Lambda) sigma_r, block-applied to both 2-spinors
/// independently.  In r_B/Z units: sigma.p = -i (Z alpha / r)[d/dr (r .) + Lambda] sigma_r.
inline ReducedBispinorFn sigma_p_blocks(const ReducedBispinorFn& f, double zalpha,
                                        double base_step) {
    const Steps st = steps_for(f, base_step);
    const int m1 = f.m1, m2 = f.m1 + 1;
    auto inner = f.eval;
    ReducedBispinorFn out;
    out.m1 = f.m1;
    out.depth = f.depth + 1;
    out.r_scale = f.r_scale;
    out.eval = [=](double r, double th) {
        auto srf = [&](double rr, double tt) {
            const BispinorSample v = inner(rr, tt);
            return join(sigma_r_reduced(upper_of(v), tt), sigma_r_reduced(lower_of(v), tt));
        };
        const double hr = st.h_r(r);
        const BispinorSample dr_rf = fd::deriv7(
            [&](double s) { return Complex(r + s) * srf(r + s, th); }, hr);
        const BispinorSample g0 = srf(r, th);
        const BispinorSample dth =
            fd::deriv7([&](double s) { return srf(r, th + s); }, st.h_theta);
        const SpinorSample lam_u = lambda_terms(m1, m2, upper_of(g0), upper_of(dth), th);
        const SpinorSample lam_d = lambda_terms(m1, m2, lower_of(g0), lower_of(dth), th);
        const Complex fac(0.0, -zalpha / r);
        return join(fac * (upper_of(dr_rf) + lam_u), fac * (lower_of(dr_rf) + lam_d));
    };
    return out;
}

} // namespace detail_op

/// J_z: exact (analytic phi action); every component carries m_j = m1 + 1/2.
inline ReducedBispinorFn op_jz(const ReducedBispinorFn& f) {
    const double mj = f.m1 + 0.5;
    ReducedBispinorFn out = f;
    auto inner = f.eval;
    out.eval = [=](double r, double th) { return Complex(mj) * inner(r, th); };
    return out;
}

/// Dirac invariant I_D = diag(Lambda, -Lambda) (hbar = 1).
inline ReducedBispinorFn op_id(const ReducedBispinorFn& f, double base_step = 8e-3) {
    return detail_op::lambda_blocks(f, +1.0, -1.0, base_step);
}

/// J^2 = Lambda^2 - 1/4 block-diagonally.
inline ReducedBispinorFn op_jsq(const ReducedBispinorFn& f, double base_step = 8e-3) {
    ReducedBispinorFn lam = detail_op::lambda_blocks(f, +1.0, +1.0, base_step);
    ReducedBispinorFn lam2 = detail_op::lambda_blocks(lam, +1.0, +1.0, base_step);
    auto inner = f.eval;
    auto outer = lam2.eval;
    ReducedBispinorFn out = lam2;
    out.eval = [=](double r, double th) {
        return outer(r, th) - Complex(0.25) * inner(r, th);
    };
    return out;
}

/// Dirac Hamiltonian with the Coulomb potential, m = c = 1, e^2 = alpha,
/// r in r_B/Z units (so V = -(Z alpha)^2 / r and energies are in m c^2).
inline ReducedBispinorFn op_h(const ReducedBispinorFn& f, double zalpha, double base_step = 8e-3) {
    ReducedBispinorFn sp = detail_op::sigma_p_blocks(f, zalpha, base_step);
    auto inner = f.eval;
    auto spe = sp.eval;
    const double za2 = zalpha * zalpha;
    ReducedBispinorFn out = sp;
    out.eval = [=](double r, double th) {
        const BispinorSample f0 = inner(r, th);
        const BispinorSample s = spe(r, th);
        const double v = -za2 / r;
        return join(Complex(v + 1.0) * upper_of(f0) + lower_of(s),
                    upper_of(s) + Complex(v - 1.0) * lower_of(f0));
    };
    return out;
}

/// Johnson-Lippman invariant in the compositional form
///   I_JL = m Z e^2 Sigma.r/r - (i/c) I_D rho_1 (H - m c^2 rho_3),
/// i.e. Z alpha Sigma.r_hat - i I_D rho_1 (H - rho_3) in natural units.
/// Eigenvalues are +-Z alpha a_{eps,j} (in units m^2 c^3 e / hbar ... = 1).
inline ReducedBispinorFn op_jl(const ReducedBispinorFn& f, double zalpha, double base_step = 8e-3) {
    ReducedBispinorFn hf = op_h(f, zalpha, base_step);
    auto inner = f.eval;
    auto he = hf.eval;
    // g = rho_1 (H - rho_3) f : subtract (upper, -lower), then swap blocks
    ReducedBispinorFn g;
    g.m1 = f.m1;
    g.depth = hf.depth;
    g.r_scale = f.r_scale;
    g.eval = [=](double r, double th) {
        const BispinorSample f0 = inner(r, th);
        const BispinorSample w = he(r, th) - join(upper_of(f0), Complex(-1.0) * lower_of(f0));
        return join(lower_of(w), upper_of(w));
    };
    ReducedBispinorFn idg = op_id(g, base_step);
    auto idge = idg.eval;
    ReducedBispinorFn out = idg;
    out.eval = [=](double r, double th) {
        const BispinorSample f0 = inner(r, th);
        const BispinorSample srf =
            join(sigma_r_reduced(upper_of(f0), th), sigma_r_reduced(lower_of(f0), th));
        return Complex(zalpha) * srf - Complex(0.0, 1.0) * idge(r, th);
    };
    return out;
}

/// The commutator-built invariant, implemented as
///   I_BEL = (I_JL I_D - I_D I_JL) / (2i).
/// This order reproduces the published eigenvalue assignment
/// sigma * Z alpha kappa_j a_{eps,j} on the (theta = pi/4, phi = 0) states;
/// the opposite order flips every sign.
inline ReducedBispinorFn op_bel(const ReducedBispinorFn& f, double zalpha,
                                double base_step = 8e-3) {
    ReducedBispinorFn a = op_jl(op_id(f, base_step), zalpha, base_step);
    ReducedBispinorFn b = op_id(op_jl(f, zalpha, base_step), base_step);
    auto ae = a.eval;
    auto be = b.eval;
    ReducedBispinorFn out = a;
    out.depth = std::max(a.depth, b.depth);
    out.eval = [=](double r, double th) {
        return (ae(r, th) - be(r, th)) * Complex(0.0, -0.5);
    };
    return out;
}

/// Generalized invariant c_D I_D + (c_JL / Z alpha) I_JL + (c_BEL / Z alpha) I_BEL;
/// its squared eigenvalue is c_D^2 kappa^2 + c_JL^2 a^2 + c_BEL^2 kappa^2 a^2.
inline ReducedBispinorFn op_gen(const ReducedBispinorFn& f, double zalpha, double c_d,
                                double c_jl, double c_bel, double base_step = 8e-3) {
    ReducedBispinorFn id = op_id(f, base_step);
    ReducedBispinorFn jl = op_jl(f, zalpha, base_step);
    ReducedBispinorFn bel = op_bel(f, zalpha, base_step);
    auto ide = id.eval;
    auto jle = jl.eval;
    auto bele = bel.eval;
    ReducedBispinorFn out = bel;
    out.eval = [=](double r, double th) {
        return Complex(c_d) * ide(r, th) + Complex(c_jl / zalpha) * jle(r, th) +
               Complex(c_bel / zalpha) * bele(r, th);
    };
    return out;
}

inline ReducedBispinorFn apply_operator(const OperatorHandle& op, const ReducedBispinorFn& f,
                                        double zalpha) {
    switch (op.kind) {
        case OperatorKind::H: return op_h(f, zalpha, op.fd_step);
        case OperatorKind::Jz: return op_jz(f);
        case OperatorKind::Jsq: return op_jsq(f, op.fd_step);
        case OperatorKind::ID: return op_id(f, op.fd_step);
        case OperatorKind::IJL: return op_jl(f, zalpha, op.fd_step);
        case OperatorKind::IBEL: return op_bel(f, zalpha, op.fd_step);
    }
    throw std::invalid_argument("apply_operator: unknown kind");
}

/// Pointwise application with the azimuthal phases restored.
inline BispinorSample apply_at(const OperatorHandle& op, const ReducedBispinorFn& f,
                               double zalpha, double r, double theta, double phi) {
    BispinorSample s = apply_operator(op, f, zalpha).eval(r, theta);
    const Complex e1 = std::exp(Complex(0.0, f.m1 * phi));
    const Complex e2 = std::exp(Complex(0.0, (f.m1 + 1) * phi));
    s.c[0] *= e1;
    s.c[1] *= e2;
    s.c[2] *= e1;
    s.c[3] *= e2;
    return s;
}

/// Wrap a bound state for operator application.
inline ReducedBispinorFn make_reduced(const BoundState& state) {
    ReducedBispinorFn f;
    f.m1 = state.m1();
    f.depth = 0;
    f.r_scale = 0.5 * state.radial().big_n;  // x-variable scale of the envelope
    f.eval = [state](double r, double th) { return state.reduced_sample(r, th); };
    return f;
}

/// Interior sample nodes away from the origin and the poles, used for
/// residual norms.  r is in r_B/Z units.
struct ResidualGrid {
    std::vector<double> r;
    std::vector<double> theta;
};

inline ResidualGrid make_residual_grid(double r_lo, double r_hi, int n_r, int n_theta,
                                       double theta_guard = 0.35) {
    ResidualGrid g;
    for (int i = 0; i < n_r; ++i)
        g.r.push_back(r_lo * std::pow(r_hi / r_lo, (i + 0.5) / n_r));
    const double pi = std::numbers::pi;
    for (int k = 0; k < n_theta; ++k)
        g.theta.push_back(theta_guard + (pi - 2.0 * theta_guard) * (k + 0.5) / n_theta);
    return g;
}

/// Guard band adapted to a state: x in [0.5, 2 n_r + 2 gamma + 9] scaled back to r.
inline ResidualGrid state_residual_grid(const RadialSolution& sol, int n_r = 8, int n_theta = 6) {
    const double half_n = 0.5 * sol.big_n;
    const double x_lo = 0.5, x_hi = 2.0 * sol.n_r + 2.0 * sol.gamma + 9.0;
    return make_residual_grid(half_n * x_lo, half_n * x_hi, n_r, n_theta);
}

/// || (A - a) f || / || f ||, root-mean-square over the grid nodes.
/// The reduced representation makes the pointwise magnitudes phi-independent.
inline double eigen_residual(const ReducedBispinorFn& af, const ReducedBispinorFn& f,
                             Complex expected, const ResidualGrid& grid) {
    double num = 0.0, den = 0.0;
    for (double r : grid.r)
        for (double th : grid.theta) {
            const BispinorSample v = af.eval(r, th);
            const BispinorSample f0 = f.eval(r, th);
            num += (v - expected * f0).norm_sq();
            den += f0.norm_sq();
        }
    return std::sqrt(num / den);
}

inline double eigen_residual(const OperatorHandle& op, const BoundState& state, double expected,
                             const ResidualGrid& grid) {
    const ReducedBispinorFn f = make_reduced(state);
    const ReducedBispinorFn af = apply_operator(op, f, state.config().zalpha());
    return eigen_residual(af, f, expected, grid);
}

/// || {A, B} f || / (||A f|| + ||B f|| + ||f||) over the grid (RMS norms).
template <typename OpA, typename OpB>
double anticommutator_norm(OpA&& op_a, OpB&& op_b, const ReducedBispinorFn& f,
                           const ResidualGrid& grid) {
    const ReducedBispinorFn af = op_a(f);
    const ReducedBispinorFn bf = op_b(f);
    const ReducedBispinorFn abf = op_a(bf);
    const ReducedBispinorFn baf = op_b(af);
    double num = 0.0, na = 0.0, nb = 0.0, nf = 0.0;
    for (double r : grid.r)
        for (double th : grid.theta) {
            num += (abf.eval(r, th) + baf.eval(r, th)).norm_sq();
            na += af.eval(r, th).norm_sq();
            nb += bf.eval(r, th).norm_sq();
            nf += f.eval(r, th).norm_sq();
        }
    return std::sqrt(num) / (std::sqrt(na) + std::sqrt(nb) + std::sqrt(nf));
}

/// || [A, B] f || / (||A f|| + ||B f|| + ||f||) over the grid.
template <typename OpA, typename OpB>
double commutator_norm(OpA&& op_a, OpB&& op_b, const ReducedBispinorFn& f,
                       const ResidualGrid& grid) {
    const ReducedBispinorFn af = op_a(f);
    const ReducedBispinorFn bf = op_b(f);
    const ReducedBispinorFn abf = op_a(bf);
    const ReducedBispinorFn baf = op_b(af);
    double num = 0.0, na = 0.0, nb = 0.0, nf = 0.0;
    for (double r : grid.r)
        for (double th : grid.theta) {
            num += (abf.eval(r, th) - baf.eval(r, th)).norm_sq();
            na += af.eval(r, th).norm_sq();
            nb += bf.eval(r, th).norm_sq();
            nf += f.eval(r, th).norm_sq();
        }
    return std::sqrt(num) / (std::sqrt(na) + std::sqrt(nb) + std::sqrt(nf));
}

/// <f| A |f> by quadrature over a state grid, using the reduced samples
/// (the phi integral contributes a factor 2 pi exactly).
inline Complex expectation(const ReducedBispinorFn& af, const ReducedBispinorFn& f,
                           const Grid3& grid) {
    Complex acc = 0.0;
    for (std::size_t ir = 0; ir < grid.r.size(); ++ir)
        for (std::size_t it = 0; it < grid.theta.size(); ++it) {
            const double w = grid.w_r[ir] * grid.w_theta[it] * 2.0 * std::numbers::pi;
            acc += w * dot(f.eval(grid.r[ir], grid.theta[it]),
                           af.eval(grid.r[ir], grid.theta[it]));
        }
    return acc;
}

} // namespace dirac
