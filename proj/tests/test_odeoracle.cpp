#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "dirac/odeoracle.hpp"
#include "dirac/radial.hpp"

using namespace dirac;
using Catch::Approx;

TEST_CASE("shooting functional vanishes at the closed-form energy") {
    const double eps0 = energy(0, 1, 0.5).epsilon;
    const ShootingConfig cfg;
    const double at_eigen =
        std::abs(integrate_radial(1, 0.5, eps0, RadialBranch::plus_minus, cfg).functional);
    const double off_1 =
        std::abs(integrate_radial(1, 0.5, eps0 - 0.02, RadialBranch::plus_minus, cfg).functional);
    const double off_2 =
        std::abs(integrate_radial(1, 0.5, eps0 + 0.02, RadialBranch::plus_minus, cfg).functional);
    CHECK(at_eigen < 1e-7);
    CHECK(off_1 > 1e3 * at_eigen);
    CHECK(off_2 > 1e3 * at_eigen);
}

TEST_CASE("spectrum agrees with the closed form") {
    const ShootingConfig cfg;
    for (int kappa : {1, 2, 3})
        for (double za : {0.0073, 0.146, 0.584}) {
            const auto eps = find_spectrum(kappa, za, 3, cfg);
            REQUIRE(eps.size() == 4);
            for (int n_r = 0; n_r <= 3; ++n_r) {
                const double want = energy(n_r, kappa, za).epsilon;
                CHECK(std::abs(eps[n_r] - want) <= 1e-8);
            }
        }
}

TEST_CASE("leading-order Rydberg value for weak coupling") {
    const auto eps = find_spectrum(2, 0.0073, 0, ShootingConfig{});
    // n_r = 0, kappa = 2: n = 2, eps ~ 1 - (Z alpha)^2 / 8
    CHECK(eps[0] == Approx(1.0 - 0.0073 * 0.0073 / 8.0).epsilon(1e-9));
}

TEST_CASE("both branches locate the same eigenvalues for n_r >= 1") {
    const ShootingConfig cfg;
    const auto plus = find_spectrum(1, 0.5, 3, cfg, RadialBranch::plus_minus);
    const auto minus = find_spectrum(1, 0.5, 2, cfg, RadialBranch::minus_plus);
    // the (-,+) pair has no n_r = 0 solution; its lowest roots are n_r = 1, 2, 3
    for (int i = 0; i < 3; ++i) CHECK(std::abs(minus[i] - plus[i + 1]) < 1e-8);
}

TEST_CASE("no real gamma beyond Z alpha = kappa") {
    CHECK_THROWS_AS(find_spectrum(1, 1.2, 1, ShootingConfig{}), std::domain_error);
}

TEST_CASE("u-component node count equals n_r") {
    const ShootingConfig cfg;
    for (int kappa : {1, 2})
        for (int n_r : {0, 1, 2, 3}) {
            const double eps = energy(n_r, kappa, 0.5).epsilon;
            const auto res = integrate_radial(kappa, 0.5, eps, RadialBranch::plus_minus, cfg);
            CHECK(res.u_nodes == n_r);
        }
}

TEST_CASE("integrated profile matches the closed-form radial shape") {
    // normalized (u, v) from the integrator against e^{-vk xi} xi^g poly(xi),
    // L2 relative error <= 1e-6
    for (int n_r : {0, 1, 2})
        for (int kappa : {1, 2}) {
            const double za = 0.5;
            const auto sol = make_radial_solution(n_r, kappa, za);
            const double eps = sol.epsilon;
            std::vector<double> xi_s, u_s, v_s;
            ShootingConfig cfg;
            integrate_radial(kappa, za, eps, RadialBranch::plus_minus, cfg,
                             [&](double xi, double u, double v) {
                                 xi_s.push_back(xi);
                                 u_s.push_back(u);
                                 v_s.push_back(v);
                             });
            // the integrated (u, v) are the polynomial parts; the physical
            // profiles carry e^{-vk xi}: f+ = e^{-vk xi} xi^g P+(2 vk xi) up
            // to one scale, g- the same scale times -sqrt((1-e)/(1+e)) Q-
            double num_u = 0.0, den_u = 0.0, cross_u = 0.0;
            double num_v = 0.0, den_v = 0.0, cross_v = 0.0;
            std::vector<double> cu(xi_s.size()), cv(xi_s.size());
            for (std::size_t i = 0; i < xi_s.size(); ++i) {
                const double x = 2.0 * sol.varkappa * xi_s[i];
                const auto tp = polynomials_laguerre(n_r, kappa, za, x);
                const double damp = std::exp(-sol.varkappa * xi_s[i]);
                const double env = damp * std::pow(xi_s[i], sol.gamma);
                u_s[i] *= damp;
                v_s[i] *= damp;
                cu[i] = env * tp.p_plus;
                cv[i] = -std::sqrt((1.0 - eps) / (1.0 + eps)) * env * tp.q_minus;
                cross_u += u_s[i] * cu[i];
                den_u += cu[i] * cu[i];
                cross_v += v_s[i] * cv[i];
                den_v += cv[i] * cv[i];
            }
            const double su = cross_u / den_u, sv = cross_v / den_v;
            for (std::size_t i = 0; i < xi_s.size(); ++i) {
                num_u += std::pow(u_s[i] - su * cu[i], 2);
                num_v += std::pow(v_s[i] - sv * cv[i], 2);
            }
            CHECK(std::sqrt(num_u / den_u) / std::abs(su) < 1e-6);
            CHECK(std::sqrt(num_v / den_v) / std::abs(sv) < 1e-6);
            // the two scales agree: one constant per pair
            CHECK(sv == Approx(su).epsilon(1e-6));
        }
}
