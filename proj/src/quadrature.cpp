#include "lcs/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace lcs {
namespace {

GaussHermiteRule build_rule(int order) {
  // Jacobi matrix of the monic probabilists' Hermite recurrence:
  // zero diagonal, sub-diagonal sqrt(k).
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd sub(order - 1);
  for (int k = 1; k < order; ++k) sub(k - 1) = std::sqrt(static_cast<double>(k));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("gauss_hermite: eigen solver failed");

  GaussHermiteRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = solver.eigenvectors().row(0).transpose().array().square();
  rule.weights /= rule.weights.sum();
  return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite(int order) {
  if (order < 1 || order > 4096) throw std::invalid_argument("gauss_hermite: unsupported order");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussHermiteRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussHermiteRule>(build_rule(order));
  return *slot;
}

double gaussian_expectation_adaptive(const std::function<double(double)>& f, double rel_tolerance, double span) {
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  auto integrand = [&](double x) { return norm * std::exp(-0.5 * x * x) * f(x); };
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, -span, span, 20,
                                                                       rel_tolerance, &error);
}

}  // namespace lcs
