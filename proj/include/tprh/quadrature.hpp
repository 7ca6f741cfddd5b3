#ifndef TPRH_QUADRATURE_HPP
#define TPRH_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace tprh {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  static GaussLegendreRule make(int order);

  /// Shared 16-point rule (exact through polynomial degree 31 per panel).
  static const GaussLegendreRule& panel_rule();
};

/// Composite Gauss-Legendre integral of f over [a, b] split into panels.
/// The parallel version fills per-panel partial sums with OpenMP and
/// combines them in panel order, so the result is independent of the
/// thread count and bit-identical to the serial version.
double integrate_panels_serial(const std::function<double(double)>& f,
                               double a, double b, int panels);
double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, int panels);

}  // namespace tprh

#endif
