#include "tprh/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tprh {

GaussLegendreRule GaussLegendreRule::make(int order) {
  if (order < 2) throw std::invalid_argument("quadrature order must be >= 2");
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

const GaussLegendreRule& GaussLegendreRule::panel_rule() {
  static const GaussLegendreRule rule = make(16);
  return rule;
}

namespace {

double panel_sum(const std::function<double(double)>& f, double lo, double hi,
                 const GaussLegendreRule& rule) {
  const double mid = 0.5 * (lo + hi);
  const double halfwidth = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    sum += rule.weights[j] * f(mid + halfwidth * rule.nodes[j]);
  }
  return halfwidth * sum;
}

}  // namespace

double integrate_panels_serial(const std::function<double(double)>& f,
                               double a, double b, int panels) {
  if (panels < 1) throw std::invalid_argument("panels must be >= 1");
  const auto& rule = GaussLegendreRule::panel_rule();
  const double h = (b - a) / panels;
  std::vector<double> partial(panels);
  for (int p = 0; p < panels; ++p) {
    partial[p] = panel_sum(f, a + p * h, a + (p + 1) * h, rule);
  }
  double total = 0.0;
  for (int p = 0; p < panels; ++p) total += partial[p];
  return total;
}

double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, int panels) {
  if (panels < 1) throw std::invalid_argument("panels must be >= 1");
  const auto& rule = GaussLegendreRule::panel_rule();
  const double h = (b - a) / panels;
  std::vector<double> partial(panels);
#pragma omp parallel for schedule(static)
  for (int p = 0; p < panels; ++p) {
    partial[p] = panel_sum(f, a + p * h, a + (p + 1) * h, rule);
  }
  // Fixed-order combine keeps the result independent of the thread count.
  double total = 0.0;
  for (int p = 0; p < panels; ++p) total += partial[p];
  return total;
}

}  // namespace tprh
