#pragma once

#include <cmath>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dirac/io.hpp"
#include "dirac/observables.hpp"
#include "dirac/odeoracle.hpp"
#include "dirac/operators.hpp"

namespace dirac {

struct VerifyOptions {
    PhysicalConfig cfg{1.0, 0.5};  // amplified coupling; tolerances degenerate as Za -> 0
    int n_max = 2;
    bool with_oracle = true;
    double beta_fault = 0.0;  // scales assembled amplitudes; nonzero must fail normalization
};

struct CheckRow {
    std::string suite;
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string grid;
};

struct VerifyReport {
    std::vector<CheckRow> rows;
    bool all_pass = true;

    void add(const std::string& suite, const std::string& name, double measured,
             double threshold, const std::string& grid) {
        const bool ok = measured <= threshold;
        rows.push_back({suite, name, measured, threshold, ok, grid});
        all_pass = all_pass && ok;
    }
};

namespace verify_detail {

inline ReducedBispinorFn smooth_field(int m1, unsigned seed, double r0, double width) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::array<Complex, 4> amp;
    std::array<std::array<double, 3>, 4> ang;
    for (int i = 0; i < 4; ++i) {
        amp[i] = Complex(u(rng), u(rng));
        for (int k = 0; k < 3; ++k) ang[i][k] = u(rng);
    }
    const std::array<int, 4> orders{m1, m1 + 1, m1, m1 + 1};
    ReducedBispinorFn f;
    f.m1 = m1;
    f.r_scale = width;
    f.eval = [=](double r, double th) {
        const double g = std::exp(-(r - r0) * (r - r0) / (2.0 * width * width));
        const double c = std::cos(th), s = std::sin(th);
        BispinorSample out;
        for (int i = 0; i < 4; ++i)
            out.c[i] = amp[i] * (g * std::pow(s, std::abs(orders[i])) *
                                 (ang[i][0] + ang[i][1] * c + ang[i][2] * c * c));
        return out;
    };
    return f;
}

inline std::vector<SpinorLabel> labels_up_to(int l_max) {
    std::vector<SpinorLabel> out;
    for (int l = 0; l <= l_max; ++l)
        for (int parity : {+1, -1}) {
            const int two_j = parity > 0 ? 2 * l + 1 : 2 * l - 1;
            if (two_j < 1) continue;
            for (int two_mj = -two_j; two_mj <= two_j; two_mj += 2)
                out.push_back({l, HalfInt(two_mj), parity});
        }
    return out;
}

inline double a_eps_j(int n_r, int kappa, double za) {
    const double g = gamma_j(kappa, za);
    return std::sqrt(n_r * (n_r + 2.0 * g)) / energy(n_r, kappa, za).big_n;
}

} // namespace verify_detail

inline void verify_normalization(const VerifyOptions& opt, VerifyReport& rep) {
    const std::string grid = "laguerre-48 x legendre-24 x phi-16";
    const std::vector<SpinParams> sps = {{0.0, 0.0}, {0.7, 0.3}, {2.2, -1.4}};
    const double fault = 1.0 + opt.beta_fault;
    for (int n = 1; n <= opt.n_max; ++n)
        for (int kappa = 1; kappa <= n; ++kappa) {
            const int n_r = n - kappa;
            for (int two_mj = 1; two_mj <= 2 * kappa - 1; two_mj += 2)
                for (std::size_t is = 0; is < sps.size(); ++is) {
                    const QuantumNumbers qp{n_r, kappa, HalfInt(two_mj), +1};
                    BispinorField fp = assemble_field(qp, sps[is], opt.cfg, 48, 24, 16);
                    for (auto& s : fp.samples) s = s * Complex(fault);
                    std::ostringstream name;
                    name << "norm n_r=" << n_r << " kappa=" << kappa << " 2mj=" << two_mj
                         << " sp#" << is;
                    rep.add("normalization", name.str() + " sigma=+",
                            std::abs(inner_product(fp, fp).real() - 1.0), 1e-8, grid);
                    if (n_r > 0) {
                        const QuantumNumbers qm{n_r, kappa, HalfInt(two_mj), -1};
                        BispinorField fm = assemble_field(qm, sps[is], opt.cfg, 48, 24, 16);
                        for (auto& s : fm.samples) s = s * Complex(fault);
                        rep.add("normalization", name.str() + " sigma=-",
                                std::abs(inner_product(fm, fm).real() - 1.0), 1e-8, grid);
                        rep.add("normalization", name.str() + " overlap",
                                std::abs(inner_product(fp, fm)), 1e-8, grid);
                    }
                }
        }
}

inline void verify_angular(VerifyReport& rep) {
    const auto labels = verify_detail::labels_up_to(3);
    const auto rule = make_gauss_legendre(12);
    double worst_gram = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i; j < labels.size(); ++j) {
            const Complex g = angular_inner_product(labels[i], labels[j], rule, 11);
            worst_gram = std::max(worst_gram, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    rep.add("angular", "gram l<=3", worst_gram, 1e-10, "legendre-12 x phi-11");

    double worst_ladder = 0.0;
    const Complex i1{0.0, 1.0};
    for (int l = 0; l <= 3; ++l)
        for (int two_mj = -(2 * l + 1); two_mj <= 2 * l + 1; two_mj += 2)
            for (double th : {0.5, 1.4, 2.6}) {
                const double ph = 0.8;
                const auto up = spherical_spinor({l, HalfInt(two_mj), +1}, th, ph);
                const auto want = i1 * spherical_spinor({l + 1, HalfInt(two_mj), -1}, th, ph);
                const auto got = apply_sigma_r(up, th, ph);
                worst_ladder = std::max(worst_ladder, norm_max(got - want));
            }
    rep.add("angular", "sigma_r ladder l<=3", worst_ladder, 1e-12, "pointwise");

    double worst_lambda = 0.0;
    for (const auto& lab : verify_detail::labels_up_to(4)) {
        if (lab.two_j() > 7) continue;  // kappa_j <= 4
        const auto parts = spinor_theta_parts(lab);
        for (double th : {0.4, 1.2, 2.1}) {
            const auto got = apply_lambda(parts, th, 0.6);
            const auto want =
                Complex(double(lab.lambda_eigenvalue())) * spherical_spinor(lab, th, 0.6);
            const double ref = std::max(norm_max(spherical_spinor(lab, th, 0.6)), 1e-3);
            worst_lambda = std::max(worst_lambda, norm_max(got - want) / ref);
        }
    }
    rep.add("angular", "Lambda eigenrelation kappa<=4", worst_lambda, 1e-6,
            "5-point theta FD h=1e-4");
}

inline void verify_energy(VerifyReport& rep) {
    double worst = 0.0;
    for (int n = 1; n <= 6; ++n)
        for (int kappa = 1; kappa <= n; ++kappa)
            for (double za : {0.01, 0.3, 0.7})
                worst = std::max(worst, std::abs(energy(n - kappa, kappa, za).epsilon -
                                                 fine_structure(n, kappa, za).epsilon));
    rep.add("energy", "two closed forms agree (n<=6)", worst, 1e-14, "exact formulas");

    double worst_ryd = 0.0;
    const double za = 1e-3;
    for (int n = 1; n <= 4; ++n) {
        const double eps = energy(n - 1, 1, za).epsilon;
        worst_ryd =
            std::max(worst_ryd, std::abs((1.0 - eps) * 2.0 * n * n / (za * za) - 1.0));
    }
    rep.add("energy", "Rydberg limit at Za=1e-3", worst_ryd, 1e-6, "exact formulas");
}

inline void verify_equivalence(const VerifyOptions& opt, VerifyReport& rep) {
    double worst = 0.0;
    const double za = opt.cfg.zalpha();
    for (int n_r = 1; n_r <= 6; ++n_r)
        for (int kappa : {1, 2}) {
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
            const double cb = eval_poly(rc.b_plus, x_fit / (2.0 * et.varkappa)) / tp0.p_plus;
            const double cbm = eval_poly(rc.b_minus, x_fit / (2.0 * et.varkappa)) / tp0.p_minus;
            for (double x : {0.1, 1.5, 7.0, 20.0, 45.0}) {
                const auto tp = polynomials_laguerre(n_r, kappa, za, x);
                const double xi = x / (2.0 * et.varkappa);
                const double scale = std::max({1.0, std::abs(tp.p_plus), std::abs(tp.p_minus)});
                worst = std::max(worst, std::abs(eval_poly(rc.b_plus, xi) - cb * tp.p_plus) /
                                            (std::abs(cb) * scale));
                worst = std::max(worst, std::abs(eval_poly(rc.b_minus, xi) - cbm * tp.p_minus) /
                                            (std::abs(cbm) * scale));
            }
        }
    rep.add("equivalence", "recurrence vs Laguerre forms (n_r<=6)", worst, 1e-10,
            "scale-fit, x in [0,45]");
}

inline void verify_operators(const VerifyOptions& opt, VerifyReport& rep) {
    const double za = opt.cfg.zalpha();
    const std::string grid = "guard band, 7-point FD, depth-graded steps (base 8e-3)";
    struct CaseRow {
        InvariantCase kind;
        OperatorKind op;
        const char* name;
    };
    const std::vector<CaseRow> cases = {{InvariantCase::darwin, OperatorKind::ID, "ID"},
                                        {InvariantCase::jl, OperatorKind::IJL, "IJL"},
                                        {InvariantCase::bel, OperatorKind::IBEL, "IBEL"}};
    for (int n = 1; n <= opt.n_max; ++n)
        for (int kappa = 1; kappa <= n; ++kappa) {
            const int n_r = n - kappa;
            for (const auto& cs : cases)
                for (int sigma : {+1, -1}) {
                    if (n_r == 0 && sigma < 0) continue;
                    const BoundState state({n_r, kappa, HalfInt(1), sigma}, special_case(cs.kind),
                                           opt.cfg);
                    const auto rgrid = state_residual_grid(state.radial(), 6, 5);
                    double expected = 0.0;
                    switch (cs.op) {
                        case OperatorKind::ID: expected = sigma * kappa; break;
                        case OperatorKind::IJL:
                            expected = sigma * za * verify_detail::a_eps_j(n_r, kappa, za);
                            break;
                        case OperatorKind::IBEL:
                            expected =
                                sigma * za * kappa * verify_detail::a_eps_j(n_r, kappa, za);
                            break;
                        default: break;
                    }
                    std::ostringstream name;
                    name << cs.name << " n=" << n << " kappa=" << kappa << " sigma=" << sigma
                         << " expected=" << io::fmt(expected);
                    rep.add("operators", name.str(),
                            eigen_residual({cs.op}, state, expected, rgrid), 1e-5, grid);
                    if (cs.kind == InvariantCase::darwin) {
                        std::ostringstream hn;
                        hn << "H n=" << n << " kappa=" << kappa << " sigma=" << sigma
                           << " expected=" << io::fmt(state.radial().epsilon);
                        rep.add("operators", hn.str(),
                                eigen_residual({OperatorKind::H}, state,
                                               state.radial().epsilon, rgrid),
                                1e-5, grid);
                        const double j = kappa - 0.5;
                        std::ostringstream jn;
                        jn << "Jsq n=" << n << " kappa=" << kappa << " sigma=" << sigma;
                        rep.add("operators", jn.str(),
                                eigen_residual({OperatorKind::Jsq}, state, j * (j + 1.0), rgrid),
                                1e-5, grid);
                        std::ostringstream zn;
                        zn << "Jz n=" << n << " kappa=" << kappa << " sigma=" << sigma;
                        rep.add("operators", zn.str(),
                                eigen_residual({OperatorKind::Jz}, state, 0.5, rgrid), 1e-10,
                                grid);
                    }
                }
        }
}

inline void verify_anticommutators(const VerifyOptions& opt, VerifyReport& rep) {
    const double za = opt.cfg.zalpha();
    auto id = [&](const ReducedBispinorFn& f) { return op_id(f); };
    auto jl = [&](const ReducedBispinorFn& f) { return op_jl(f, za); };
    auto bel = [&](const ReducedBispinorFn& f) { return op_bel(f, za); };
    auto h = [&](const ReducedBispinorFn& f) { return op_h(f, za); };
    const auto grid = make_residual_grid(2.8, 5.5, 5, 5, 0.5);
    const std::string gdesc = "smooth field r0=4 w=1.1, 5x5 guard nodes";
    for (unsigned seed : {11u, 12u}) {
        const auto f = verify_detail::smooth_field(static_cast<int>(seed % 3) - 1, seed, 4.0, 1.1);
        const std::string tag = " field#" + std::to_string(seed);
        rep.add("anticommutators", "{ID,IJL}" + tag, anticommutator_norm(id, jl, f, grid), 1e-5,
                gdesc);
        rep.add("anticommutators", "{ID,IBEL}" + tag, anticommutator_norm(id, bel, f, grid),
                1e-5, gdesc);
        rep.add("anticommutators", "{IJL,IBEL}" + tag, anticommutator_norm(jl, bel, f, grid),
                1e-5, gdesc);
    }
    const auto f = verify_detail::smooth_field(0, 13, 4.0, 1.1);
    rep.add("anticommutators", "[H,ID]", commutator_norm(h, id, f, grid), 1e-5, gdesc);
    rep.add("anticommutators", "[H,IJL]", commutator_norm(h, jl, f, grid), 1e-5, gdesc);
    rep.add("anticommutators", "[H,IBEL]", commutator_norm(h, bel, f, grid), 1e-5, gdesc);
}

inline void verify_hartree(const VerifyOptions& opt, VerifyReport& rep) {
    const double pi = std::numbers::pi;
    for (int n = 1; n <= std::max(3, opt.n_max); ++n) {
        double mean = 0.0;
        std::vector<double> vals;
        for (int k = 0; k < 6; ++k)
            for (int m = 0; m < 3; ++m) {
                vals.push_back(hartree_shell_sum(n, opt.cfg, false, 1.5 * n,
                                                 0.25 + (pi - 0.5) * k / 5.0, 2.0 * pi * m / 3.0));
                mean += vals.back();
            }
        mean /= vals.size();
        double var = 0.0;
        for (double v : vals) var += (v - mean) * (v - mean);
        rep.add("hartree", "angular variance/mean n=" + std::to_string(n),
                std::sqrt(var / vals.size()) / mean, 1e-12, "18 angular probes");
    }
    const PhysicalConfig weak{1.0, 1e-7};  // keeps O((Z alpha)^2) below the 1e-12 floor
    double worst = 0.0;
    for (double r : {0.5, 1.5, 4.0}) {
        const double got = hartree_shell_sum(2, weak, true, r, 0.9, 0.3);
        const double want = rho_n(2, r) / (2.0 * pi);
        worst = std::max(worst, std::abs(got - want) / std::max(1e-300, want));
    }
    rep.add("hartree", "n=2 sum equals rho_2/(2 pi)", worst, 1e-12, "Pauli, Za=1e-7");
}

inline void verify_degeneracy(VerifyReport& rep) {
    double worst = 0.0;
    for (int n = 1; n <= 8; ++n)
        worst = std::max(worst, std::abs(double(degeneracy_count(n) - 2 * n * n)));
    rep.add("degeneracy", "2 n^2 states for n<=8", worst, 0.5, "enumeration");
    bool sigma_ok = true;
    for (const auto& qn : enumerate_states(4))
        if (qn.n_r == 0 && qn.sigma != +1) sigma_ok = false;
    rep.add("degeneracy", "n_r=0 exposes sigma=+ only", sigma_ok ? 0.0 : 1.0, 0.5,
            "enumeration");
}

inline void verify_oracle(const VerifyOptions& opt, VerifyReport& rep) {
    const ShootingConfig cfg;
    for (int kappa : {1, 2})
        for (double za : {0.0073, opt.cfg.zalpha()}) {
            const auto eps = find_spectrum(kappa, za, 2, cfg);
            double worst = 0.0;
            for (int n_r = 0; n_r <= 2; ++n_r)
                worst = std::max(worst, std::abs(eps[n_r] - energy(n_r, kappa, za).epsilon));
            std::ostringstream name;
            name << "spectrum kappa=" << kappa << " Za=" << io::fmt(za) << " n_r<=2";
            rep.add("oracle", name.str(), worst, 1e-8, "bidirectional shooting, tol 1e-12");
        }
}

inline VerifyReport run_verification(const VerifyOptions& opt) {
    VerifyReport rep;
    verify_normalization(opt, rep);
    verify_angular(rep);
    verify_energy(rep);
    verify_equivalence(opt, rep);
    verify_operators(opt, rep);
    verify_anticommutators(opt, rep);
    verify_hartree(opt, rep);
    verify_degeneracy(rep);
    if (opt.with_oracle) verify_oracle(opt, rep);
    return rep;
}

inline void write_report_json(std::ostream& os, const VerifyReport& rep) {
    os << "{\n  \"pass\": " << (rep.all_pass ? "true" : "false") << ",\n  \"checks\": [\n";
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& r = rep.rows[i];
        os << "    {\"suite\": \"" << r.suite << "\", \"name\": \"" << r.name
           << "\", \"measured\": " << io::fmt(r.measured)
           << ", \"threshold\": " << io::fmt(r.threshold)
           << ", \"pass\": " << (r.pass ? "true" : "false") << ", \"grid\": \"" << r.grid
           << "\"}" << (i + 1 < rep.rows.size() ? ",\n" : "\n");
    }
    os << "  ]\n}\n";
}

} // namespace dirac
