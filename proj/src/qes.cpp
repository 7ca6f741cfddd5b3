#include "tprh/qes.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tprh {

SubspaceSpec QesBranch::subspace() const {
  if (family == Family::R2) return {Family::R2, n_max, -0.75, -0.5};
  return {Family::R3, n_max, 0.75 - 0.5 * n_max, 0.5};
}

BranchParams branch_parameters(const QesBranch& branch, double g) {
  if (!(g > 0.0 && g < 1.0)) {
    throw std::invalid_argument("branch parameters require 0 < g < 1, got " +
                                std::to_string(g));
  }
  const double N = branch.n_max;
  const double root = std::sqrt(1.0 - g * g);
  BranchParams p{};
  if (branch.family == Family::R2) {
    p.alpha = -0.75;
    p.s = -0.5;
    p.c = 0.5 * std::sqrt((1.0 + g) / (1.0 - g));
    p.xi = g / root;
    p.energy = -0.5 + 2.0 * (N + 1.0) * root;
    p.a0 = (3.0 + 4.0 * N) * (4.0 * N * (g * g - 1.0) - 3.0 + 5.0 * g * g) / 4.0;
  } else {
    p.alpha = 0.75 - 0.5 * N;
    p.s = 0.5;
    p.c = 0.5 * std::sqrt((1.0 - g) / (1.0 + g));
    p.xi = -g / root;
    p.energy = -0.5 + (N + 1.0) * root;
    p.a0 = (1.0 + 2.0 * N) * (2.0 * N * (g * g - 1.0) - 1.0 + 3.0 * g * g) / 4.0;
  }
  return p;
}

OperatorMatrix build_l1_matrix(const QesBranch& branch,
                               const TprhParams& params) {
  const double g = params.g;
  if (!(g > 0.0 && g < 1.0)) {
    throw std::invalid_argument("build_l1_matrix requires 0 < g < 1");
  }
  const SubspaceSpec spec = branch.subspace();
  const auto [plus, minus] = build_generators(spec);
  const OperatorMatrix s_mat = commutator_s(plus, minus);
  const double s_sign = branch.family == Family::R2 ? 1.0 : -1.0;
  const double a0 = branch_parameters(branch, g).a0;
  const int dim = plus.dim();
  // (J-)^2 composes with itself, so the row-action reversal is harmless.
  Eigen::MatrixXd l1 = 4.0 * g * g * (minus.m * minus.m) +
                       4.0 * g * s_sign * s_mat.m - 2.0 * g * g * minus.m +
                       4.0 * plus.m -
                       (params.omega0 * params.omega0 + a0) *
                           Eigen::MatrixXd::Identity(dim, dim);
  return {spec, std::move(l1)};
}

double l1_determinant(const QesBranch& branch, double omega0, double g) {
  return build_l1_matrix(branch, {omega0, g}).m.determinant();
}

namespace {

std::vector<double> interior_grid(int grid_points) {
  // g_i = i / grid_points for i = 1 .. grid_points-1 (open interval).
  std::vector<double> gs(grid_points - 1);
  for (int i = 1; i < grid_points; ++i) {
    gs[i - 1] = static_cast<double>(i) / grid_points;
  }
  return gs;
}

}  // namespace

std::vector<double> scan_determinants_serial(const QesBranch& branch,
                                             double omega0, int grid_points) {
  const std::vector<double> gs = interior_grid(grid_points);
  std::vector<double> dets(gs.size());
  for (std::size_t i = 0; i < gs.size(); ++i) {
    dets[i] = l1_determinant(branch, omega0, gs[i]);
  }
  return dets;
}

std::vector<double> scan_determinants(const QesBranch& branch, double omega0,
                                      int grid_points) {
  const std::vector<double> gs = interior_grid(grid_points);
  std::vector<double> dets(gs.size());
  const int n = static_cast<int>(gs.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    dets[i] = l1_determinant(branch, omega0, gs[i]);
  }
  return dets;
}

namespace {

constexpr double kBisectTol = 1e-12;

double bisect_root(const QesBranch& branch, double omega0, double lo,
                   double hi, double flo) {
  while (hi - lo > kBisectTol) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = l1_determinant(branch, omega0, mid);
    if (fmid == 0.0) return mid;
    if ((flo < 0) != (fmid < 0)) {
      hi = mid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  return 0.5 * (lo + hi);
}

QesSolution package_solution(const QesBranch& branch, double omega0,
                             double g) {
  const Eigen::MatrixXd l1 = build_l1_matrix(branch, {omega0, g}).m;
  // Left null vector: the right singular direction of L1^T with the
  // smallest singular value.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(l1.transpose(), Eigen::ComputeFullV);
  Eigen::VectorXd v = svd.matrixV().col(l1.cols() - 1);
  v.normalize();
  const double cert = (l1.transpose() * v).norm();
  return {branch, omega0, g, branch_parameters(branch, g).energy, v, cert};
}

}  // namespace

std::vector<QesSolution> determinant_roots(const QesBranch& branch,
                                           double omega0, int grid_points) {
  if (!(omega0 > 0.0)) {
    throw std::invalid_argument("determinant_roots requires omega0 > 0");
  }
  const std::vector<double> gs = interior_grid(grid_points);
  const std::vector<double> dets = scan_determinants(branch, omega0, grid_points);
  std::vector<QesSolution> roots;
  for (std::size_t i = 0; i + 1 < gs.size(); ++i) {
    if (dets[i] == 0.0) {
      roots.push_back(package_solution(branch, omega0, gs[i]));
    } else if ((dets[i] < 0) != (dets[i + 1] < 0)) {
      const double g =
          bisect_root(branch, omega0, gs[i], gs[i + 1], dets[i]);
      roots.push_back(package_solution(branch, omega0, g));
    }
  }
  if (!dets.empty() && dets.back() == 0.0) {
    roots.push_back(package_solution(branch, omega0, gs.back()));
  }
  return roots;
}

bool has_closed_form(const QesBranch& branch) {
  return (branch.family == Family::R2 && branch.n_max == 0) ||
         (branch.family == Family::R3 && branch.n_max == 2);
}

std::vector<ClosedFormRoot> closed_form_g(const QesBranch& branch,
                                          double omega0) {
  if (!has_closed_form(branch)) {
    throw std::invalid_argument(
        "closed-form coupling curves exist for (R2, N=0) and (R3, N=2) only");
  }
  std::vector<ClosedFormRoot> roots;
  const double w = omega0;
  if (branch.family == Family::R2) {
    // g = sqrt((4w^2-9)(1-4w^2)) / (8w), valid on 1/2 <= w <= 3/2.
    if (w < 0.5 || w > 1.5) return roots;
    const double rad = (4 * w * w - 9) * (1 - 4 * w * w);
    if (rad < 0) return roots;
    const double g = std::sqrt(rad) / (8 * w);
    roots.push_back({g, !(g > 0.0 && g < 1.0)});
    return roots;
  }
  // g± = (1/8) sqrt((5∓2w)(2w±3)(1±2w)/w), valid on 1/2 <= w <= 2±1/2.
  // The minus root lies in the narrower window.
  if (w >= 0.5 && w <= 1.5) {
    const double rad = (5 + 2 * w) * (2 * w - 3) * (1 - 2 * w) / w;
    if (rad >= 0) {
      const double g = std::sqrt(rad) / 8;
      roots.push_back({g, !(g > 0.0 && g < 1.0)});
    }
  }
  if (w >= 0.5 && w <= 2.5) {
    const double rad = (5 - 2 * w) * (2 * w + 3) * (1 + 2 * w) / w;
    if (rad >= 0) {
      const double g = std::sqrt(rad) / 8;
      roots.push_back({g, !(g > 0.0 && g < 1.0)});
    }
  }
  return roots;
}

std::vector<std::vector<QesSolution>> sweep_roots_serial(
    const QesBranch& branch, const std::vector<double>& omega0s) {
  std::vector<std::vector<QesSolution>> out(omega0s.size());
  for (std::size_t i = 0; i < omega0s.size(); ++i) {
    out[i] = determinant_roots(branch, omega0s[i]);
  }
  return out;
}

std::vector<std::vector<QesSolution>> sweep_roots(
    const QesBranch& branch, const std::vector<double>& omega0s) {
  std::vector<std::vector<QesSolution>> out(omega0s.size());
  const int n = static_cast<int>(omega0s.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    out[i] = determinant_roots(branch, omega0s[i]);
  }
  return out;
}

}  // namespace tprh
