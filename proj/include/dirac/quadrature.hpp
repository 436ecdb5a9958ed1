#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dirac/specfun.hpp"

namespace dirac {

enum class QuadKind {
    legendre,      ///< weight 1 on [-1, 1]
    gen_laguerre,  ///< weight x^alpha e^{-x} on [0, inf)
};

/// Immutable Gaussian quadrature rule; exact on polynomials of degree
/// <= 2*order - 1 against its weight function.
struct QuadratureRule {
    QuadKind kind = QuadKind::legendre;
    double alpha = 0.0;  // only meaningful for gen_laguerre
    std::vector<double> nodes;
    std::vector<double> weights;

    int order() const { return static_cast<int>(nodes.size()); }

    template <typename F>
    double integrate(F&& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

namespace detail {

/// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights are
/// mu0 * (first eigenvector component)^2.
inline QuadratureRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& subdiag,
                                   double mu0, QuadKind kind, double alpha) {
    const int n = static_cast<int>(diag.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("golub_welsch: eigen decomposition failed");
    QuadratureRule rule;
    rule.kind = kind;
    rule.alpha = alpha;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

} // namespace detail

/// Gauss-Legendre rule on [-1, 1].
inline QuadratureRule make_gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("make_gauss_legendre: order must be >= 1");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd sub(order - 1 > 0 ? order - 1 : 0);
    for (int k = 1; k < order; ++k) sub(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
    return detail::golub_welsch(diag, sub, 2.0, QuadKind::legendre, 0.0);
}

/// Generalized Gauss-Laguerre rule for weight x^alpha e^{-x}, alpha > -1.
/// Non-integer alpha (here 2*gamma_j) is the main use.
inline QuadratureRule make_gauss_laguerre(int order, double alpha) {
    if (order < 1) throw std::invalid_argument("make_gauss_laguerre: order must be >= 1");
    if (!(alpha > -1.0)) throw std::invalid_argument("make_gauss_laguerre: alpha must exceed -1");
    Eigen::VectorXd diag(order);
    Eigen::VectorXd sub(order - 1 > 0 ? order - 1 : 0);
    for (int k = 0; k < order; ++k) diag(k) = 2.0 * k + alpha + 1.0;
    for (int k = 1; k < order; ++k) sub(k - 1) = std::sqrt(k * (k + alpha));
    return detail::golub_welsch(diag, sub, gamma_fn(alpha + 1.0), QuadKind::gen_laguerre, alpha);
}

inline QuadratureRule make_quadrature(QuadKind kind, int order, double alpha = 0.0) {
    switch (kind) {
        case QuadKind::legendre: return make_gauss_legendre(order);
        case QuadKind::gen_laguerre: return make_gauss_laguerre(order, alpha);
    }
    throw std::invalid_argument("make_quadrature: unsupported kind");
}

} // namespace dirac
