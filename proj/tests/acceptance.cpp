// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "dirac/observables.hpp"
#include "dirac/odeoracle.hpp"
#include "dirac/operators.hpp"
#include "dirac/verify.hpp"

using namespace dirac;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, title.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt_metric(const char* name, double v, double tol) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s = %.3g, tol %.3g", name, v, tol);
    return buf;
}

// ---------------------------------------------------------------- criterion 1
void criterion_spectrum_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int kappa : {1, 2, 3})
        for (double za : {0.0073, 0.146, 0.584}) {
            const auto eps = find_spectrum(kappa, za, 3, ShootingConfig{});
            for (int n_r = 0; n_r <= 3; ++n_r)
                worst = std::max(worst, std::abs(eps[n_r] - energy(n_r, kappa, za).epsilon));
        }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char detail[128];
    std::snprintf(detail, sizeof(detail), "max |eps_shoot - eps_closed| = %.3g, tol 1e-8; %.1f s",
                  worst, secs);
    report(1, "shooting spectrum matches the closed form", worst <= 1e-8 && secs <= 60.0,
           detail);
}

// ---------------------------------------------------------------- criterion 2
void criterion_equivalence() {
    double worst = 0.0;
    for (int n_r = 1; n_r <= 10; ++n_r)
        for (int kappa : {1, 2})
            for (double za : {0.3, 0.6}) {
                const auto rc = coeffs_by_recurrence(n_r, kappa, za);
                const auto et = energy(n_r, kappa, za);
                auto eval_poly = [&](const std::vector<double>& c, double xi) {
                    double acc = 0.0, p = 1.0;
                    for (double cn : c) {
                        acc += cn * p;
                        p *= xi;
                    }
                    return acc;
                };
                const double x_fit = 1.0 + 0.3 * n_r;
                const auto tp0 = polynomials_laguerre(n_r, kappa, za, x_fit);
                const double two_vk = 2.0 * et.varkappa;
                const double cb = eval_poly(rc.b_plus, x_fit / two_vk) / tp0.p_plus;
                const double cd = eval_poly(rc.d_minus, x_fit / two_vk) / tp0.q_minus;
                const double cbm = eval_poly(rc.b_minus, x_fit / two_vk) / tp0.p_minus;
                const double cdp = eval_poly(rc.d_plus, x_fit / two_vk) / tp0.q_plus;
                for (double x : {0.05, 0.9, 4.0, 13.0, 28.0, 50.0}) {
                    const auto tp = polynomials_laguerre(n_r, kappa, za, x);
                    const double xi = x / two_vk;
                    const double scale =
                        std::max({1.0, std::abs(tp.p_plus), std::abs(tp.q_minus),
                                  std::abs(tp.p_minus), std::abs(tp.q_plus)});
                    worst = std::max(worst, std::abs(eval_poly(rc.b_plus, xi) - cb * tp.p_plus) /
                                                (std::abs(cb) * scale));
                    worst = std::max(worst,
                                     std::abs(eval_poly(rc.d_minus, xi) - cd * tp.q_minus) /
                                         (std::abs(cd) * scale));
                    worst = std::max(worst,
                                     std::abs(eval_poly(rc.b_minus, xi) - cbm * tp.p_minus) /
                                         (std::abs(cbm) * scale));
                    worst = std::max(worst, std::abs(eval_poly(rc.d_plus, xi) - cdp * tp.q_plus) /
                                                (std::abs(cdp) * scale));
                }
            }
    report(2, "recurrence and Laguerre polynomial forms agree (n_r <= 10)", worst <= 1e-10,
           fmt_metric("max scale-fitted deviation", worst, 1e-10));
}

// ---------------------------------------------------------------- criterion 3
void criterion_normalization() {
    const PhysicalConfig cfg{1.0, 0.5};
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> uth(0.0, kPi), uph(-kPi, kPi);
    std::vector<SpinParams> sps;
    for (int i = 0; i < 10; ++i) sps.push_back({uth(rng), uph(rng)});

    double worst_norm = 0.0, worst_overlap = 0.0;
    for (int n = 1; n <= 4; ++n)
        for (int kappa = 1; kappa <= n; ++kappa) {
            const int n_r = n - kappa;
            const auto sol = make_radial_solution(n_r, kappa, cfg.zalpha());
            const auto grid = make_state_grid(sol, 64, 32, 32);
            for (int two_mj = -(2 * kappa - 1); two_mj <= 2 * kappa - 1; two_mj += 2)
                for (const auto& sp : sps) {
                    const BoundState plus({n_r, kappa, HalfInt(two_mj), +1}, sp, cfg);
                    const auto fp = assemble_field(plus, grid);
                    worst_norm =
                        std::max(worst_norm, std::abs(inner_product(fp, fp).real() - 1.0));
                    if (n_r > 0) {
                        const BoundState minus({n_r, kappa, HalfInt(two_mj), -1}, sp, cfg);
                        const auto fm = assemble_field(minus, grid);
                        worst_norm =
                            std::max(worst_norm, std::abs(inner_product(fm, fm).real() - 1.0));
                        worst_overlap = std::max(worst_overlap, std::abs(inner_product(fp, fm)));
                    }
                }
        }
    const bool pass = worst_norm <= 1e-8 && worst_overlap <= 1e-8;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "max |norm-1| = %.3g, max sigma overlap = %.3g, tol 1e-8 (all states n <= 4, "
                  "10 random spin params)",
                  worst_norm, worst_overlap);
    report(3, "unit norm and sigma orthogonality", pass, detail);
}

// ---------------------------------------------------------------- criterion 4
void criterion_angular() {
    const auto labels = verify_detail::labels_up_to(5);
    const auto rule = make_gauss_legendre(16);
    double worst_gram = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i; j < labels.size(); ++j) {
            const Complex g = angular_inner_product(labels[i], labels[j], rule, 25);
            worst_gram = std::max(worst_gram, std::abs(g - (i == j ? 1.0 : 0.0)));
        }

    double worst_ladder = 0.0;
    const Complex i1{0.0, 1.0};
    for (int l = 0; l <= 5; ++l)
        for (int two_mj = -(2 * l + 1); two_mj <= 2 * l + 1; two_mj += 2)
            for (double th : {0.35, 1.2, 2.0, 2.8})
                for (double ph : {0.0, 1.1}) {
                    const auto cp = spherical_spinor({l, HalfInt(two_mj), +1}, th, ph);
                    worst_ladder = std::max(
                        worst_ladder,
                        norm_max(apply_sigma_r(cp, th, ph) -
                                 i1 * spherical_spinor({l + 1, HalfInt(two_mj), -1}, th, ph)));
                    const auto cm = spherical_spinor({l + 1, HalfInt(two_mj), -1}, th, ph);
                    worst_ladder =
                        std::max(worst_ladder, norm_max(apply_sigma_r(cm, th, ph) + i1 * cp));
                }

    double worst_lambda = 0.0;
    for (const auto& lab : verify_detail::labels_up_to(6)) {
        if (lab.two_j() > 11) continue;  // kappa_j <= 6
        const auto parts = spinor_theta_parts(lab);
        for (double th : {0.3, 0.9, 1.6, 2.4}) {
            const auto got = apply_lambda(parts, th, 0.7);
            const auto want =
                Complex(double(lab.lambda_eigenvalue())) * spherical_spinor(lab, th, 0.7);
            const double ref = std::max(norm_max(spherical_spinor(lab, th, 0.7)), 1e-3);
            worst_lambda = std::max(worst_lambda, norm_max(got - want) / ref);
        }
    }
    const bool pass = worst_gram <= 1e-10 && worst_ladder <= 1e-12 && worst_lambda <= 1e-6;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "gram = %.3g (1e-10), sigma_r ladder = %.3g (1e-12), Lambda = %.3g (1e-6)",
                  worst_gram, worst_ladder, worst_lambda);
    report(4, "angular suite: orthonormality, sigma_r ladder, Lambda eigenrelation", pass,
           detail);
}

// ---------------------------------------------------------------- criterion 5
void criterion_operator_eigen() {
    const double za = 0.5;
    const PhysicalConfig cfg{1.0, za};
    double worst = 0.0, worst_jz = 0.0;
    for (int n = 1; n <= 3; ++n)
        for (int kappa = 1; kappa <= n; ++kappa) {
            const int n_r = n - kappa;
            const double a = verify_detail::a_eps_j(n_r, kappa, za);
            for (int sigma : {+1, -1}) {
                if (n_r == 0 && sigma < 0) continue;
                const BoundState darwin({n_r, kappa, HalfInt(1), sigma},
                                        special_case(InvariantCase::darwin), cfg);
                const BoundState jl({n_r, kappa, HalfInt(1), sigma},
                                    special_case(InvariantCase::jl), cfg);
                const BoundState bel({n_r, kappa, HalfInt(1), sigma},
                                     special_case(InvariantCase::bel), cfg);
                const auto grid = state_residual_grid(darwin.radial(), 6, 5);
                worst = std::max(worst, eigen_residual({OperatorKind::H}, darwin,
                                                       darwin.radial().epsilon, grid));
                const double j = kappa - 0.5;
                worst = std::max(
                    worst, eigen_residual({OperatorKind::Jsq}, darwin, j * (j + 1.0), grid));
                worst_jz =
                    std::max(worst_jz, eigen_residual({OperatorKind::Jz}, darwin, 0.5, grid));
                worst = std::max(
                    worst, eigen_residual({OperatorKind::ID}, darwin, sigma * kappa, grid));
                worst = std::max(
                    worst, eigen_residual({OperatorKind::IJL}, jl, sigma * za * a, grid));
                worst = std::max(worst, eigen_residual({OperatorKind::IBEL}, bel,
                                                       sigma * za * kappa * a, grid));
            }
        }
    const bool pass = worst <= 1e-5 && worst_jz <= 1e-10;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "max residual = %.3g (tol 1e-5, sigma-signed eigenvalues), Jz = %.3g "
                  "(1e-10); 7-point FD, graded steps base 8e-3",
                  worst, worst_jz);
    report(5, "operator eigen-residuals on n <= 3 eigenstates", pass, detail);
}

// ---------------------------------------------------------------- criterion 6
void criterion_anticommutators() {
    const double za = 0.5;
    auto id = [&](const ReducedBispinorFn& f) { return op_id(f); };
    auto jl = [&](const ReducedBispinorFn& f) { return op_jl(f, za); };
    auto bel = [&](const ReducedBispinorFn& f) { return op_bel(f, za); };
    auto h = [&](const ReducedBispinorFn& f) { return op_h(f, za); };
    const auto grid = make_residual_grid(2.8, 5.5, 5, 5, 0.5);
    double worst_anti = 0.0;
    for (unsigned seed : {101u, 102u, 103u, 104u, 105u}) {
        const auto f =
            verify_detail::smooth_field(static_cast<int>(seed % 3) - 1, seed, 4.0, 1.1);
        worst_anti = std::max(worst_anti, anticommutator_norm(id, jl, f, grid));
        worst_anti = std::max(worst_anti, anticommutator_norm(id, bel, f, grid));
        worst_anti = std::max(worst_anti, anticommutator_norm(jl, bel, f, grid));
    }
    double worst_comm = 0.0;
    for (unsigned seed : {106u, 107u}) {
        const auto f = verify_detail::smooth_field(0, seed, 4.0, 1.1);
        worst_comm = std::max(worst_comm, commutator_norm(h, id, f, grid));
        worst_comm = std::max(worst_comm, commutator_norm(h, jl, f, grid));
        worst_comm = std::max(worst_comm, commutator_norm(h, bel, f, grid));
    }
    const bool pass = worst_anti <= 1e-5 && worst_comm <= 1e-5;
    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "max anticommutator = %.3g, max [H, inv] = %.3g, tol 1e-5 (5 random fields)",
                  worst_anti, worst_comm);
    report(6, "invariants anticommute pairwise and commute with H", pass, detail);
}

// ---------------------------------------------------------------- criterion 7
void criterion_closed_form_observables() {
    const PhysicalConfig weak{1.0, 1e-6};
    double worst_w = 0.0, worst_s = 0.0;
    struct Row {
        ReferenceTag tag;
        QuantumNumbers qn;
        SpinParams sp;
    };
    std::vector<Row> rows;
    for (int two_mj : {1, -1}) {
        rows.push_back({ReferenceTag::s1, {0, 1, HalfInt(two_mj), +1}, {}});
        rows.push_back({ReferenceTag::s2_darwin,
                        {1, 1, HalfInt(two_mj), +1},
                        special_case(InvariantCase::darwin)});
        rows.push_back({ReferenceTag::p2_darwin,
                        {1, 1, HalfInt(two_mj), -1},
                        special_case(InvariantCase::darwin)});
    }
    for (int two_mj : {3, 1, -1, -3})
        rows.push_back({ReferenceTag::level2_j32, {0, 2, HalfInt(two_mj), +1}, {}});

    for (const auto& row : rows) {
        const BoundState state(row.qn, row.sp, weak);
        for (int ir = 0; ir < 50; ++ir) {
            const double r = 0.05 * std::pow(25.0 / 0.05, ir / 49.0);
            for (int it = 0; it < 50; ++it) {
                const double th = 0.03 + (kPi - 0.06) * it / 49.0;
                const double ph = 0.7;
                const auto ref = reference_state(row.tag, row.qn.m_j.twice(), r, th, ph);
                const SpinorSample p = state.pauli_sample(r, th, ph);
                const double w = std::norm(p.up) + std::norm(p.down);
                worst_w = std::max(worst_w, std::abs(w - ref.w) / std::max(1.0, ref.w));
                if (ref.w > 1e-16)
                    worst_s = std::max(
                        worst_s, (sigma_expectation(p) * (1.0 / w) - ref.s).norm());
            }
        }
    }
    const bool pass = worst_w <= 1e-10 && worst_s <= 1e-10;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "max density dev = %.3g, max spin dev = %.3g, tol 1e-10 (50x50 grid)",
                  worst_w, worst_s);
    report(7, "closed-form n = 1, 2 densities and spin maps", pass, detail);
}

// ---------------------------------------------------------------- criterion 8
void criterion_hartree() {
    double worst_var = 0.0;
    const PhysicalConfig cfg{1.0, 0.4};
    for (int n : {1, 2, 3}) {
        std::vector<double> vals;
        double mean = 0.0;
        for (int k = 0; k < 8; ++k)
            for (int m = 0; m < 3; ++m) {
                vals.push_back(hartree_shell_sum(n, cfg, false, 1.2 * n,
                                                 0.2 + (kPi - 0.4) * k / 7.0,
                                                 2.0 * kPi * m / 3.0));
                mean += vals.back();
            }
        mean /= vals.size();
        double var = 0.0;
        for (double v : vals) var += (v - mean) * (v - mean);
        worst_var = std::max(worst_var, std::sqrt(var / vals.size()) / mean);
    }
    const PhysicalConfig weak{1.0, 1e-7};
    double worst_rho = 0.0;
    for (double r : {0.4, 1.1, 2.5, 6.0}) {
        const double got = hartree_shell_sum(2, weak, true, r, 0.8, 0.2);
        const double want = rho_n(2, r) / (2.0 * kPi);
        worst_rho = std::max(worst_rho, std::abs(got - want) / want);
    }
    const bool pass = worst_var <= 1e-12 && worst_rho <= 1e-12;
    char detail[144];
    std::snprintf(detail, sizeof(detail),
                  "angular variance/mean = %.3g, n=2 vs rho_2/2pi = %.3g, tol 1e-12",
                  worst_var, worst_rho);
    report(8, "Hartree shell sums are spherically symmetric", pass, detail);
}

// ---------------------------------------------------------------- criterion 9
void criterion_degeneracy() {
    bool pass = true;
    for (int n = 1; n <= 8; ++n) pass = pass && degeneracy_count(n) == 2 * n * n;
    for (const auto& qn : enumerate_states(5))
        if (qn.n_r == 0 && qn.sigma != +1) pass = false;
    report(9, "state enumeration gives 2 n^2 and sigma = + only at n_r = 0", pass,
           "n <= 8 checked exactly");
}

// --------------------------------------------------------------- criterion 10
void criterion_nonrelativistic_limit() {
    double worst_ryd = 0.0;
    const double za = 1e-3;
    for (int n = 1; n <= 4; ++n)
        for (int kappa = 1; kappa <= n; ++kappa) {
            const double eps = energy(n - kappa, kappa, za).epsilon;
            worst_ryd =
                std::max(worst_ryd, std::abs((1.0 - eps) * 2.0 * n * n / (za * za) - 1.0));
        }

    const PhysicalConfig cfg{1.0, 0.01};
    double worst_pauli = 0.0;
    for (const auto& qn : {QuantumNumbers{1, 1, HalfInt(1), +1},
                           QuantumNumbers{0, 1, HalfInt(-1), +1},
                           QuantumNumbers{1, 2, HalfInt(3), -1}}) {
        const BoundState state(qn, {0.6, -0.4}, cfg);
        for (double r : {0.5, 1.5, 4.0, 9.0})
            for (double th : {0.5, 1.3, 2.6}) {
                const double we = density_at(state, false, r, th, 0.9);
                const double wp = density_at(state, true, r, th, 0.9);
                if (wp < 1e-12) continue;
                worst_pauli = std::max(worst_pauli, std::abs(we / wp - 1.0));
            }
    }
    const bool pass = worst_ryd <= 1e-6 && worst_pauli <= 5.0 * 0.01 * 0.01;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "Rydberg coefficient dev = %.3g (1e-6), exact vs Pauli density = %.3g "
                  "(5 (Z alpha)^2 = 5e-4)",
                  worst_ryd, worst_pauli);
    report(10, "nonrelativistic limit", pass, detail);
}

// --------------------------------------------------------------- criterion 11
void criterion_family_distinctness() {
    // n = 2, j = 1/2 level.  The three families have pairwise-distinct
    // densities.  Mirror symmetry theta -> pi - theta: darwin preserves both
    // the density and the spin texture; jl breaks both; bel's density is
    // exactly symmetric (the interference term carries Im(beta1* beta2) = 0
    // at theta = pi/4, phi = 0) and its parity breaking is carried by the
    // spin field.
    const PhysicalConfig cfg{1.0, 7.2973525693e-3};
    const QuantumNumbers qn{1, 1, HalfInt(1), +1};
    const BoundState darwin(qn, special_case(InvariantCase::darwin), cfg);
    const BoundState jl(qn, special_case(InvariantCase::jl), cfg);
    const BoundState bel(qn, special_case(InvariantCase::bel), cfg);
    const auto grid = make_state_grid(darwin.radial(), 32, 24, 1);

    auto w_field = [&](const BoundState& s) {
        std::vector<double> w;
        for (std::size_t ir = 0; ir < grid.r.size(); ++ir)
            for (std::size_t it = 0; it < grid.theta.size(); ++it)
                w.push_back(density_at(s, false, grid.r[ir], grid.theta[it], 0.0));
        return w;
    };
    std::vector<double> wt;
    for (std::size_t ir = 0; ir < grid.r.size(); ++ir)
        for (std::size_t it = 0; it < grid.theta.size(); ++it)
            wt.push_back(grid.w_r[ir] * grid.w_theta[it]);
    const auto wd = w_field(darwin), wj = w_field(jl), wb = w_field(bel);
    auto l2_dist = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double num = 0.0, da = 0.0, db = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            num += wt[i] * (a[i] - b[i]) * (a[i] - b[i]);
            da += wt[i] * a[i] * a[i];
            db += wt[i] * b[i] * b[i];
        }
        return std::sqrt(num) / std::sqrt(std::max(da, db));
    };
    const double d_dj = l2_dist(wd, wj), d_db = l2_dist(wd, wb), d_jb = l2_dist(wj, wb);

    // mirror asymmetry of (w, w s) sampled pointwise
    auto mirror = [&](const BoundState& s) {
        double aw = 0.0, as = 0.0, w_scale = 0.0, ws_scale = 0.0;
        for (double r : {0.7, 1.6, 3.2, 6.0})
            for (double th : {0.3, 0.8, 1.25}) {
                const auto sm1 = s.sample(r, th, 0.4);
                const auto sm2 = s.sample(r, kPi - th, 0.4);
                const double w1 = density_of(sm1), w2 = density_of(sm2);
                const Vec3 sv1 = sigma_expectation(sm1);
                const Vec3 sv2 = sigma_expectation(sm2);
                aw = std::max(aw, std::abs(w1 - w2));
                w_scale = std::max(w_scale, std::max(w1, w2));
                const Vec3 mirrored{-sv2.x, -sv2.y, sv2.z};
                as = std::max(as, (sv1 - mirrored).norm());
                ws_scale = std::max(ws_scale, sv1.norm());
            }
        return std::pair{aw / w_scale, as / ws_scale};
    };
    const auto [daw, das] = mirror(darwin);
    const auto [jaw, jas] = mirror(jl);
    const auto [baw, bas] = mirror(bel);

    const bool pass = d_dj > 1e-3 && d_db > 1e-3 && d_jb > 1e-3 && daw <= 1e-12 &&
                      das <= 1e-12 && jaw > 1e-3 && jas > 1e-3 && bas > 1e-3 && baw <= 1e-12;
    char detail[240];
    std::snprintf(detail, sizeof(detail),
                  "w distances d/jl=%.3g d/bel=%.3g jl/bel=%.3g (>1e-3); mirror asym darwin "
                  "(w=%.2g,s=%.2g) jl (w=%.2g,s=%.2g) bel (w=%.2g symmetric, s=%.2g)",
                  d_dj, d_db, d_jb, daw, das, jaw, jas, baw, bas);
    report(11, "invariant families are physically distinct", pass, detail);
}

} // namespace

int main() {
    std::printf("acceptance suite: Dirac-Coulomb bound states\n");
    criterion_spectrum_oracle();
    criterion_equivalence();
    criterion_normalization();
    criterion_angular();
    criterion_operator_eigen();
    criterion_anticommutators();
    criterion_closed_form_observables();
    criterion_hartree();
    criterion_degeneracy();
    criterion_nonrelativistic_limit();
    criterion_family_distinctness();
    if (g_failures == 0)
        std::printf("all 11 criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
