#pragma once

#include <Eigen/Dense>

#include <functional>

namespace lcs {

/// Nodes and weights for integrals against the standard normal density:
/// E[f(X)] ~= sum_k weights[k] * f(nodes[k]), X ~ N(0, 1). Weights sum to 1.
struct GaussHermiteRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  int order() const { return static_cast<int>(nodes.size()); }

  template <typename F>
  double expectation(F&& f) const {
    // Fixed order, ascending nodes: reductions are reproducible.
    double sum = 0.0;
    for (Eigen::Index k = 0; k < nodes.size(); ++k) sum += weights(k) * f(nodes(k));
    return sum;
  }
};

/// Golub-Welsch rule for the probabilists' Hermite weight. Rules are computed
/// once per order and cached; the returned reference stays valid.
const GaussHermiteRule& gauss_hermite(int order);

/// Adaptive Gauss-Kronrod (15-point) estimate of E[f(X)], X ~ N(0, 1),
/// integrating over [-span, span].
double gaussian_expectation_adaptive(const std::function<double(double)>& f, double rel_tolerance,
                                     double span = 12.0);

}  // namespace lcs
