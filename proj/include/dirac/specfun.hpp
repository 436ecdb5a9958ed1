#pragma once

#include <cmath>
#include <stdexcept>

namespace dirac {

/// ln Gamma(x) for x > 0, 15-term Lanczos approximation (g = 607/128).
inline double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
    static const double cof[14] = {
        57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
        -0.491913816097620199,   0.339946499848118887e-4, 0.465236289270485756e-4,
        -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
        0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
        -0.261908384015814087e-4, 0.368991826595316234e-5};
    double y = x;
    double tmp = x + 5.24218750000000000;
    tmp = (x + 0.5) * std::log(tmp) - tmp;
    double ser = 0.999999999999997092;
    for (int j = 0; j < 14; ++j) ser += cof[j] / ++y;
    return tmp + std::log(2.5066282746310005 * ser / x);
}

/// Gamma(x) for x > 0 with relative error ~1e-14 up to x = 170.  The large
/// exponent (x + 1/2) ln t - t is carried in extended precision; plain
/// exp(log_gamma(x)) would lose a digit past x ~ 100.
inline double gamma_fn(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be positive");
    static const double cof[14] = {
        57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
        -0.491913816097620199,   0.339946499848118887e-4, 0.465236289270485756e-4,
        -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
        0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
        -0.261908384015814087e-4, 0.368991826595316234e-5};
    double y = x;
    double ser = 0.999999999999997092;
    for (int j = 0; j < 14; ++j) ser += cof[j] / ++y;
    const long double t = static_cast<long double>(x) + 5.24218750000000000L;
    const long double lg = (static_cast<long double>(x) + 0.5L) * std::log(t) - t +
                           std::log(2.5066282746310005L * static_cast<long double>(ser) /
                                    static_cast<long double>(x));
    return static_cast<double>(std::exp(lg));
}

/// n! as a double.
inline double factorial(int n) {
    if (n < 0) throw std::domain_error("factorial: negative argument");
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

/// Associated Legendre function P_l^{|m|}(x) WITHOUT the Condon-Shortley
/// phase (positive near x -> 1).  Any phase convention is applied by the
/// spinor constructors, not here.  Returns 0 for |m| > l.
inline double assoc_legendre(int l, int m, double x) {
    if (l < 0) throw std::domain_error("assoc_legendre: l must be non-negative");
    if (std::abs(x) > 1.0) throw std::domain_error("assoc_legendre: |x| must be <= 1");
    int mm = std::abs(m);
    if (mm > l) return 0.0;

    // P_m^m = (2m-1)!! (1-x^2)^{m/2}, then upward recurrence in l
    double pmm = 1.0;
    if (mm > 0) {
        const double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
        double fact = 1.0;
        for (int i = 0; i < mm; ++i) {
            pmm *= fact * somx2;
            fact += 2.0;
        }
    }
    if (l == mm) return pmm;
    double pmmp1 = x * (2.0 * mm + 1.0) * pmm;
    if (l == mm + 1) return pmmp1;
    double pll = 0.0;
    for (int ll = mm + 2; ll <= l; ++ll) {
        pll = (x * (2.0 * ll - 1.0) * pmmp1 - (ll + mm - 1.0) * pmm) / (ll - mm);
        pmm = pmmp1;
        pmmp1 = pll;
    }
    return pll;
}

/// Generalized Laguerre polynomial L_n^{alpha}(x) by the stable three-term
/// recurrence.  Convention: L_{-1}^{alpha} == 0.
inline double gen_laguerre(int n, double alpha, double x) {
    if (n < 0) return 0.0;
    if (!(alpha > -1.0)) throw std::domain_error("gen_laguerre: alpha must exceed -1");
    if (x < 0.0) throw std::domain_error("gen_laguerre: x must be non-negative");
    double lkm1 = 0.0;       // L_{-1}
    double lk = 1.0;         // L_0
    for (int k = 0; k < n; ++k) {
        const double lkp1 = ((2.0 * k + 1.0 + alpha - x) * lk - (k + alpha) * lkm1) / (k + 1.0);
        lkm1 = lk;
        lk = lkp1;
    }
    return lk;
}

} // namespace dirac
