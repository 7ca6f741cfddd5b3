#include "tprh/wavefunction.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "tprh/quadrature.hpp"

namespace tprh {

GaugeForm::GaugeForm(const WaveFunction& wf, std::vector<Polynomial> q)
    : c_(wf.gauge_c),
      xi_(wf.arg_scale_xi),
      basis_(basis_order(wf.branch.subspace())),
      coeffs_(wf.phi1_coeffs),
      q_(std::move(q)) {
  if (coeffs_.size() != static_cast<Eigen::Index>(basis_.size())) {
    throw std::invalid_argument("coefficient count does not match the basis");
  }
}

double GaugeForm::operator()(double x) const {
  const double w = x * x;
  const double t = xi_ * w;
  double sum = 0.0;
  for (std::size_t k = 0; k < q_.size(); ++k) {
    if (q_[k].coeffs.empty()) continue;
    double uk = 0.0;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      uk += coeffs_[i] *
            eval_basis_derivative(basis_[i], static_cast<int>(k), t);
    }
    sum += q_[k](w) * uk;
  }
  return std::exp(-c_ * w) * sum;
}

GaugeForm GaugeForm::dxx() const {
  // With w = x^2: d²/dx² f(w) = 2 f'(w) + 4 w f''(w), and the w-derivative
  // of e^{-cw} q(w) u^{(k)}(xi w) distributes over the three factors.
  // Collecting by derivative order of u gives, for each source q_k:
  //   order k:   -2c q + 2 q' + 4c² (w q) - 8c (w q') + 4 (w q'')
  //   order k+1: 2 xi q - 8c xi (w q) + 8 xi (w q')
  //   order k+2: 4 xi² (w q)
  GaugeForm out = *this;
  out.q_.assign(q_.size() + 2, Polynomial{});
  for (std::size_t k = 0; k < q_.size(); ++k) {
    const Polynomial& q = q_[k];
    if (q.coeffs.empty()) continue;
    const Polynomial dq = q.derivative();
    const Polynomial wq = q.shifted_up();
    out.q_[k] = out.q_[k] + (-2.0 * c_) * q + 2.0 * dq +
                (4.0 * c_ * c_) * wq + (-8.0 * c_) * dq.shifted_up() +
                4.0 * dq.derivative().shifted_up();
    out.q_[k + 1] = out.q_[k + 1] + (2.0 * xi_) * q +
                    (-8.0 * c_ * xi_) * wq + (8.0 * xi_) * dq.shifted_up();
    out.q_[k + 2] = out.q_[k + 2] + (4.0 * xi_ * xi_) * wq;
  }
  if (out.derivative_order() > 4) {
    throw std::runtime_error("gauge form exceeds supported derivative order");
  }
  return out;
}

GaugeForm GaugeForm::times_w() const {
  GaugeForm out = *this;
  for (auto& q : out.q_) q = q.shifted_up();
  return out;
}

GaugeForm& GaugeForm::add_scaled(const GaugeForm& other, double factor) {
  if (q_.size() < other.q_.size()) q_.resize(other.q_.size());
  for (std::size_t k = 0; k < other.q_.size(); ++k) {
    q_[k] = q_[k] + factor * other.q_[k];
  }
  return *this;
}

GaugeForm& GaugeForm::scale(double factor) {
  for (auto& q : q_) q = factor * q;
  return *this;
}

WaveFunction assemble_phi1(const QesSolution& sol) {
  if (!std::isfinite(sol.certificate) || sol.certificate > 1e-6 ||
      sol.null_vector.size() == 0) {
    throw std::invalid_argument(
        "solution lacks a certified null vector (certificate " +
        std::to_string(sol.certificate) + ")");
  }
  const BranchParams bp = branch_parameters(sol.branch, sol.g);
  return {sol.branch, sol, sol.null_vector, bp.c, bp.xi};
}

GaugeForm phi1_form(const WaveFunction& wf) {
  return GaugeForm(wf, {Polynomial{{1.0}}});
}

GaugeForm apply_lplus(const GaugeForm& f, double g) {
  GaugeForm out = f.dxx();
  out.scale(0.5 * (g - 1.0));
  out.add_scaled(f.times_w(), 0.5 * (1.0 + g));
  out.add_scaled(f, -0.5);
  return out;
}

GaugeForm apply_lminus(const GaugeForm& f, double g) {
  GaugeForm out = f.dxx();
  out.scale(0.5 * (-g - 1.0));
  out.add_scaled(f.times_w(), 0.5 * (1.0 - g));
  out.add_scaled(f, -0.5);
  return out;
}

GaugeForm compute_phi2(const WaveFunction& wf) {
  const double omega0 = wf.solution.omega0;
  const double energy = wf.solution.energy;
  GaugeForm out = apply_lplus(phi1_form(wf), wf.solution.g);
  out.scale(-1.0 / omega0);
  out.add_scaled(phi1_form(wf), energy / omega0);
  return out;
}

namespace {

struct ComponentForms {
  GaugeForm phi1;
  GaugeForm phi2;
  GaugeForm row1;  // L+ phi1 + w0 phi2 - E phi1
  GaugeForm row2;  // w0 phi1 + L- phi2 - E phi2
};

ComponentForms make_forms(const WaveFunction& wf) {
  const double w0 = wf.solution.omega0;
  const double energy = wf.solution.energy;
  const double g = wf.solution.g;
  GaugeForm phi1 = phi1_form(wf);
  GaugeForm phi2 = compute_phi2(wf);
  GaugeForm row1 = apply_lplus(phi1, g);
  row1.add_scaled(phi2, w0);
  row1.add_scaled(phi1, -energy);
  GaugeForm row2 = apply_lminus(phi2, g);
  row2.add_scaled(phi1, w0);
  row2.add_scaled(phi2, -energy);
  return {std::move(phi1), std::move(phi2), std::move(row1), std::move(row2)};
}

int panel_count(const QuadratureSettings& qs) {
  return std::max(1, static_cast<int>(2.0 * qs.window * qs.panels_per_unit));
}

void check_tail(const WaveFunction& wf, const ComponentForms& forms,
                const QuadratureSettings& qs) {
  // Peak of the density integrand versus its value at the window edge.
  double peak = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double x = qs.window * i / 200.0;
    const double p1 = forms.phi1(x);
    const double p2 = forms.phi2(x);
    peak = std::max(peak, p1 * p1 + p2 * p2);
  }
  const double edge1 = forms.phi1(qs.window);
  const double edge2 = forms.phi2(qs.window);
  const double edge = edge1 * edge1 + edge2 * edge2;
  if (!(edge <= qs.tail_bound * peak)) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "quadrature window X=%g too small: integrand tail %.3e "
                  "exceeds %.1e of peak %.3e",
                  qs.window, edge, qs.tail_bound, peak);
    throw std::runtime_error(msg);
  }
  (void)wf;
}

}  // namespace

double quadrature_norm(const WaveFunction& wf, const QuadratureSettings& qs) {
  const ComponentForms forms = make_forms(wf);
  check_tail(wf, forms, qs);
  const auto density = [&forms](double x) {
    const double p1 = forms.phi1(x);
    const double p2 = forms.phi2(x);
    return p1 * p1 + p2 * p2;
  };
  return std::sqrt(
      integrate_panels(density, -qs.window, qs.window, panel_count(qs)));
}

double residual(const WaveFunction& wf, const QuadratureSettings& qs) {
  const ComponentForms forms = make_forms(wf);
  check_tail(wf, forms, qs);
  const int panels = panel_count(qs);
  const auto l2 = [&](const GaugeForm& f) {
    const auto sq = [&f](double x) {
      const double v = f(x);
      return v * v;
    };
    return std::sqrt(integrate_panels(sq, -qs.window, qs.window, panels));
  };
  const auto density = [&forms](double x) {
    const double p1 = forms.phi1(x);
    const double p2 = forms.phi2(x);
    return p1 * p1 + p2 * p2;
  };
  const double norm_psi = std::sqrt(
      integrate_panels(density, -qs.window, qs.window, panels));
  if (norm_psi == 0.0) throw std::runtime_error("wavefunction has zero norm");
  return std::max(l2(forms.row1), l2(forms.row2)) / norm_psi;
}

double decay_exponent(const WaveFunction& wf) {
  const GaugeForm phi1 = phi1_form(wf);
  double sw = 0, sy = 0, sww = 0, swy = 0;
  for (int i = 0; i < kDecayFitPoints; ++i) {
    const double x =
        kDecayFitLo + (kDecayFitHi - kDecayFitLo) * i / (kDecayFitPoints - 1);
    const double v = std::abs(phi1(x));
    if (v == 0.0) {
      throw std::runtime_error("phi1 vanishes on the decay fit window");
    }
    const double w = x * x;
    const double y = -std::log(v);
    sw += w;
    sy += y;
    sww += w * w;
    swy += w * y;
  }
  const int n = kDecayFitPoints;
  return (n * swy - sw * sy) / (n * sww - sw * sw);
}

std::vector<SampleRow> sample_serial(const WaveFunction& wf,
                                     std::span<const double> xs) {
  const GaugeForm phi1 = phi1_form(wf);
  const GaugeForm phi2 = compute_phi2(wf);
  std::vector<SampleRow> rows(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    rows[i] = {xs[i], phi1(xs[i]), phi2(xs[i])};
  }
  return rows;
}

std::vector<SampleRow> sample(const WaveFunction& wf,
                              std::span<const double> xs) {
  const GaugeForm phi1 = phi1_form(wf);
  const GaugeForm phi2 = compute_phi2(wf);
  std::vector<SampleRow> rows(xs.size());
  const int n = static_cast<int>(xs.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    rows[i] = {xs[i], phi1(xs[i]), phi2(xs[i])};
  }
  return rows;
}

WaveFunction normalized(const WaveFunction& wf, const QuadratureSettings& qs) {
  const double norm = quadrature_norm(wf, qs);
  WaveFunction out = wf;
  out.phi1_coeffs /= norm;
  return out;
}

}  // namespace tprh
