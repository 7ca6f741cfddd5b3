#ifndef TPRH_WAVEFUNCTION_HPP
#define TPRH_WAVEFUNCTION_HPP

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "tprh/qes.hpp"

namespace tprh {

/// Two-component QES eigenstate. The first component is spanned by the
/// branch subspace: phi1(x) = sum_i coeff_i e^{-c x^2} basis_i(xi x^2);
/// it is even in x and normalizable (c - xi > 0 on the R2 branch, and
/// xi < 0 on the R3 branch).
struct WaveFunction {
  QesBranch branch;
  QesSolution solution;
  Eigen::VectorXd phi1_coeffs;  // over basis_order of the branch subspace
  double gauge_c;
  double arg_scale_xi;
};

/// Functions of the closed family e^{-c w} sum_k q_k(w) u^{(k)}(xi w) with
/// w = x^2 and u the coefficient combination of the subspace basis. Both
/// wavefunction components and their images under the quadratic-boson
/// operators stay inside this family, so all derivatives are analytic.
class GaugeForm {
public:
  GaugeForm(const WaveFunction& wf, std::vector<Polynomial> q);

  double operator()(double x) const;

  /// Image under the second x-derivative.
  GaugeForm dxx() const;
  /// Image under multiplication by x^2.
  GaugeForm times_w() const;

  GaugeForm& add_scaled(const GaugeForm& other, double factor);
  GaugeForm& scale(double factor);

  int derivative_order() const { return static_cast<int>(q_.size()) - 1; }

private:
  double c_;
  double xi_;
  std::vector<BasisFunction> basis_;
  Eigen::VectorXd coeffs_;
  std::vector<Polynomial> q_;
};

/// Wavefunction component built from a certified determinant-root solution;
/// throws std::invalid_argument when the null-vector certificate is missing
/// (not finite or too large to witness the root).
WaveFunction assemble_phi1(const QesSolution& sol);

GaugeForm phi1_form(const WaveFunction& wf);

/// Second spinor component (E - L+) phi1 / omega0, expanded analytically
/// through the gauge-form derivative rules (no numerical differentiation).
GaugeForm compute_phi2(const WaveFunction& wf);

/// Action of the quadratic-boson operators 2 L± = (±g-1) d²/dx² +
/// (1±g) x² - 1 on a gauge form.
GaugeForm apply_lplus(const GaugeForm& f, double g);
GaugeForm apply_lminus(const GaugeForm& f, double g);

struct QuadratureSettings {
  double window = 12.0;  // integrate on [-X, X]
  int panels_per_unit = 4;
  double tail_bound = 1e-14;  // required integrand drop at the window edge
};

/// Max over the two component equations of ||row residual||_2 / ||Psi||_2,
/// with L2 norms by composite Gauss-Legendre quadrature. Throws
/// std::runtime_error if the quadrature window fails the tail bound.
double residual(const WaveFunction& wf, const QuadratureSettings& qs = {});

/// Quadrature norm of the two-component state on [-X, X].
double quadrature_norm(const WaveFunction& wf,
                       const QuadratureSettings& qs = {});

/// Least-squares slope of -log|phi1| against x^2 over x in [3, 6]. For R2
/// solutions this estimates the Gaussian decay rate c - xi; for R3 the
/// basis functions themselves decay and the fit returns at least c.
double decay_exponent(const WaveFunction& wf);

inline constexpr double kDecayFitLo = 3.0;
inline constexpr double kDecayFitHi = 6.0;
inline constexpr int kDecayFitPoints = 31;

struct SampleRow {
  double x;
  double phi1;
  double phi2;
};

/// Pointwise table of both components; OpenMP-parallel over the grid with
/// the serial version kept as the test reference.
std::vector<SampleRow> sample(const WaveFunction& wf,
                              std::span<const double> xs);
std::vector<SampleRow> sample_serial(const WaveFunction& wf,
                                     std::span<const double> xs);

/// Copy rescaled to unit quadrature norm (both components scale together).
WaveFunction normalized(const WaveFunction& wf,
                        const QuadratureSettings& qs = {});

}  // namespace tprh

#endif
