#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "tprh/wavefunction.hpp"

using namespace tprh;

namespace {

const double kSq5 = std::sqrt(5.0);
const double kSq15 = std::sqrt(15.0);
const double kSq19 = std::sqrt(19.0);

WaveFunction reference_case_1() {
  const auto roots = determinant_roots({Family::R2, 0}, 1.0);
  REQUIRE(roots.size() == 1);
  return assemble_phi1(roots[0]);
}

WaveFunction reference_case_2() {
  const auto roots = determinant_roots({Family::R3, 2}, 1.0);
  REQUIRE(roots.size() == 2);
  return assemble_phi1(roots[1]);  // the larger coupling
}

double kummer(double a, double b, double t) {
  return eval_kummer(KummerFunction(a, b), t);
}

// Least-squares scale giving ours ~ scale * reference.
double fit_scale(const std::vector<double>& ours,
                 const std::vector<double>& reference) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < ours.size(); ++i) {
    num += ours[i] * reference[i];
    den += reference[i] * reference[i];
  }
  return num / den;
}

std::vector<double> grid_01_3(int n = 24) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = 0.1 + (3.0 - 0.1) * i / (n - 1);
  return xs;
}

}  // namespace

TEST_CASE("first reference state: phi1 coefficients match the published pair") {
  const WaveFunction wf = reference_case_1();
  const Eigen::Vector2d published(250 + 68 * kSq15, -235 - 60 * kSq15);
  const double scale = wf.phi1_coeffs.dot(published) / published.squaredNorm();
  CHECK((wf.phi1_coeffs - scale * published).norm() / published.norm() *
            std::abs(1.0 / scale) <
        1e-8);
  // The coupling root is bisected to ~1e-12, which propagates into the
  // derived gauge parameters.
  CHECK(wf.solution.energy == doctest::Approx(1.25).epsilon(1e-11));
  CHECK(wf.gauge_c == doctest::Approx((8 + kSq15) / 14).epsilon(1e-11));
  CHECK(wf.arg_scale_xi == doctest::Approx(kSq15 / 7).epsilon(1e-11));
}

TEST_CASE("second reference state: null vector matches the adjugate oracle") {
  const WaveFunction wf = reference_case_2();
  const Eigen::MatrixXd m =
      build_l1_matrix({Family::R3, 2}, {1.0, wf.solution.g}).m;
  // At a determinant root adj(M) M = det(M) I = 0, so any non-null row of
  // the adjugate is a left null vector.
  Eigen::Matrix3d adj;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj(i, j) = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
    }
  }
  int best_row = 0;
  for (int i = 1; i < 3; ++i) {
    if (adj.row(i).norm() > adj.row(best_row).norm()) best_row = i;
  }
  Eigen::Vector3d oracle = adj.row(best_row).transpose().normalized();
  Eigen::Vector3d got = wf.phi1_coeffs.normalized();
  if (oracle.dot(got) < 0) oracle = -oracle;
  CHECK((got - oracle).norm() < 1e-8);
}

TEST_CASE("phi2 agrees with a finite-difference application of the operator") {
  for (const WaveFunction& wf : {reference_case_1(), reference_case_2()}) {
    const GaugeForm phi1 = phi1_form(wf);
    const GaugeForm phi2 = compute_phi2(wf);
    const double g = wf.solution.g;
    const double energy = wf.solution.energy;
    const double w0 = wf.solution.omega0;
    const double h = 1e-4;
    for (const double x : {0.4, 1.0, 1.7, 2.5}) {
      const double d2 =
          (phi1(x + h) - 2 * phi1(x) + phi1(x - h)) / (h * h);
      const double lplus =
          0.5 * ((g - 1) * d2 + ((1 + g) * x * x - 1) * phi1(x));
      const double expected = (energy * phi1(x) - lplus) / w0;
      CHECK(std::abs(phi2(x) - expected) <
            1e-6 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST_CASE("first reference state: phi2 matches the published coefficients") {
  const WaveFunction wf = reference_case_1();
  const GaugeForm phi1 = phi1_form(wf);
  const GaugeForm phi2 = compute_phi2(wf);
  const double c = wf.gauge_c, xi = wf.arg_scale_xi;
  const auto h1 = [&](double x) {
    return std::exp(-c * x * x) * kummer(-0.75, -0.5, xi * x * x);
  };
  const auto h2 = [&](double x) {
    return std::exp(-c * x * x) * kummer(0.25, 0.5, xi * x * x);
  };
  const double p11 = 250 + 68 * kSq15, p12 = -235 - 60 * kSq15;
  const double p21 = 70 + 28 * kSq15;
  const auto p22 = [&](double x) {
    return 35 - (120 + 20 * kSq15) * x * x;
  };
  const auto xs = grid_01_3();
  std::vector<double> ours1, ref1;
  for (const double x : xs) {
    ours1.push_back(phi1(x));
    ref1.push_back(p11 * h1(x) + p12 * h2(x));
  }
  const double scale = fit_scale(ours1, ref1);  // one common rescaling
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(std::abs(ours1[i] - scale * ref1[i]) <
          1e-7 * std::abs(scale * ref1[i]));
  }
  for (const double x : xs) {
    const double reference = scale * (p21 * h1(x) + p22(x) * h2(x));
    CHECK(std::abs(phi2(x) - reference) < 1e-7 * std::abs(reference));
  }
}

TEST_CASE("second reference state: published forms after one sign repair") {
  // The published second component has a sign defect in its constant term:
  // reproducing (E - L+) phi1 / omega0 requires sqrt(19)(70 + 31 sqrt(5)),
  // not sqrt(19)(70 - 31 sqrt(5)). Both components then match pointwise
  // under a single common rescaling.
  const WaveFunction wf = reference_case_2();
  const GaugeForm phi1 = phi1_form(wf);
  const GaugeForm phi2 = compute_phi2(wf);
  const double c = wf.gauge_c, xi = wf.arg_scale_xi;
  const auto h1 = [&](double x) {
    return std::exp(-c * x * x) * kummer(0.75, 1.5, xi * x * x);
  };
  const auto h2 = [&](double x) {
    return std::exp(-c * x * x) * kummer(-0.25, 0.5, xi * x * x);
  };
  const auto p11 = [&](double x) {
    const double w = x * x;
    return 3 * w * ((7110 + 3184 * kSq5) * w - kSq19 * (371 + 170 * kSq5));
  };
  const auto p12 = [&](double x) {
    const double w = x * x;
    return -0.25 * (kSq19 * (6368 + 2844 * kSq5) * w - (1235 + 418 * kSq5));
  };
  const auto p21 = [&](double x) {
    return 57.0 / 2 * (79 + 32 * kSq5) * x * x;
  };
  const auto p22 = [&](double x, double sign) {
    return 19.0 / 4 * (76 * x * x - kSq19 * (70 + sign * 31 * kSq5));
  };
  const auto xs = grid_01_3();
  std::vector<double> ours1, ref1;
  for (const double x : xs) {
    ours1.push_back(phi1(x));
    ref1.push_back(p11(x) * h1(x) + p12(x) * h2(x));
  }
  const double scale = fit_scale(ours1, ref1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(std::abs(ours1[i] - scale * ref1[i]) <
          1e-6 * std::abs(scale * ref1[i]));
  }
  double worst_repaired = 0.0, worst_printed = 0.0;
  for (const double x : xs) {
    const double repaired = scale * (p21(x) * h1(x) + p22(x, +1) * h2(x));
    const double printed = scale * (p21(x) * h1(x) + p22(x, -1) * h2(x));
    worst_repaired = std::max(
        worst_repaired, std::abs(phi2(x) - repaired) / std::abs(repaired));
    worst_printed = std::max(
        worst_printed, std::abs(phi2(x) - printed) / std::abs(phi2(x)));
  }
  CHECK(worst_repaired < 1e-6);
  CHECK(worst_printed > 1e-2);  // the printed constant is not the eigenstate
}

TEST_CASE("frozen high-precision pointwise ratios") {
  {
    const WaveFunction wf = reference_case_1();
    const GaugeForm phi1 = phi1_form(wf);
    CHECK(std::abs(phi1(1.0) / phi1(0.5) - 1.632988749015092621542) < 1e-9);
  }
  {
    const WaveFunction wf = reference_case_2();
    const GaugeForm phi1 = phi1_form(wf);
    CHECK(std::abs(phi1(1.0) / phi1(0.5) - 0.9947407936215049405487) < 1e-9);
  }
}

TEST_CASE("residual certification") {
  SUBCASE("both reference states") {
    CHECK(residual(reference_case_1()) < 1e-8);
    CHECK(residual(reference_case_2()) < 1e-7);
  }
  SUBCASE("sign flip of the null vector leaves the residual unchanged") {
    const WaveFunction wf = reference_case_1();
    WaveFunction flipped = wf;
    flipped.phi1_coeffs = -flipped.phi1_coeffs;
    CHECK(residual(flipped) == doctest::Approx(residual(wf)).epsilon(1e-12));
  }
  SUBCASE("a perturbed coefficient is detected") {
    WaveFunction damaged = reference_case_1();
    damaged.phi1_coeffs[0] += 1e-3;
    CHECK(residual(damaged) > 1e-4);
  }
  SUBCASE("residuals across a sweep of both branches") {
    // which_root: 0 takes the smallest coupling, -1 the largest.
    const auto run_sweep = [](const QesBranch& branch, double lo, double hi,
                              int which_root) {
      for (int i = 0; i < 25; ++i) {
        const double w = lo + (hi - lo) * (i + 1) / 26.0;
        const auto roots = determinant_roots(branch, w);
        REQUIRE(!roots.empty());
        const auto& root = which_root == 0 ? roots.front() : roots.back();
        CAPTURE(w);
        CAPTURE(root.g);
        CHECK(residual(assemble_phi1(root)) < 1e-7);
      }
    };
    run_sweep({Family::R2, 0}, 0.5, 1.5, 0);
    // Shifted branch: the lower curve over its window, the upper curve
    // where the default quadrature window resolves it. The series budget
    // caps |xi| x^2 near 330 and the tail bound needs c x^2 ~ 38, which
    // are compatible only for 2g/(1-g) < ~8.7, i.e. g below ~0.81.
    run_sweep({Family::R3, 2}, 0.5, 1.5, 0);
    run_sweep({Family::R3, 2}, 1.15, 2.4, -1);
  }
}

TEST_CASE("decay behaviour of the first component") {
  SUBCASE("closed-form identity for the decay rate") {
    for (int i = 1; i <= 20; ++i) {
      const double g = i / 21.0;
      const BranchParams p = branch_parameters({Family::R2, 0}, g);
      CHECK(p.c - p.xi ==
            doctest::Approx((1 - g) / (2 * std::sqrt(1 - g * g)))
                .epsilon(1e-12));
      CHECK(p.c - p.xi > 0.0);
    }
  }
  SUBCASE("small-coupling limit of the decay rate") {
    const BranchParams p = branch_parameters({Family::R2, 0}, 1e-10);
    CHECK(p.c - p.xi == doctest::Approx(0.5).epsilon(1e-9));
  }
  SUBCASE("fitted exponent approaches the rate from above") {
    // On the fit window t = xi x^2 in [5, 20], the confluent prefactor
    // t^(alpha-s) still contributes ~7% to the local log-slope, so the
    // fitted value sits above c - xi but within 8%.
    const WaveFunction wf = reference_case_1();
    const double fitted = decay_exponent(wf);
    const double rate = wf.gauge_c - wf.arg_scale_xi;
    CHECK(fitted > rate);
    CHECK(std::abs(fitted - rate) / rate < 0.08);
  }
  SUBCASE("negative argument scale: fit tracks the gauge exponent") {
    // With xi < 0 the large-x decay is e^{-c x^2} times the power-law tail
    // of the basis combination; the leading member here has a = -1/4 < 0
    // and grows like |t|^{1/4}, so the fitted slope sits slightly below c.
    const WaveFunction wf = reference_case_2();
    const double fitted = decay_exponent(wf);
    CHECK(fitted > 0.0);
    CHECK(std::abs(fitted - wf.gauge_c) / wf.gauge_c < 0.2);
  }
}

TEST_CASE("pointwise sampling") {
  const WaveFunction wf = reference_case_2();
  SUBCASE("even in x, exactly") {
    const std::vector<double> xs = {-2.5, -1.0, -0.3, 0.3, 1.0, 2.5};
    const auto rows = sample(wf, xs);
    for (int i = 0; i < 3; ++i) {
      CHECK(rows[i].phi1 == rows[5 - i].phi1);
      CHECK(rows[i].phi2 == rows[5 - i].phi2);
    }
  }
  SUBCASE("value at the origin is the plain coefficient sum") {
    const std::vector<double> xs = {0.0};
    const auto rows = sample(wf, xs);
    CHECK(rows[0].phi1 ==
          doctest::Approx(wf.phi1_coeffs.sum()).epsilon(1e-14));
  }
}

TEST_CASE("quadrature norm behaviour") {
  const WaveFunction wf = reference_case_1();
  SUBCASE("window growth changes the norm below 1e-10") {
    QuadratureSettings narrow;
    narrow.window = 10.0;
    QuadratureSettings wide;
    wide.window = 11.0;
    const double n1 = quadrature_norm(wf, narrow);
    const double n2 = quadrature_norm(wf, wide);
    CHECK(std::abs(n2 - n1) / n1 < 1e-10);
  }
  SUBCASE("window too small is an error") {
    QuadratureSettings tiny;
    tiny.window = 2.0;
    CHECK_THROWS_AS(quadrature_norm(wf, tiny), std::runtime_error);
  }
  SUBCASE("normalization yields a unit-norm state") {
    const WaveFunction unit = normalized(wf);
    CHECK(quadrature_norm(unit) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("second component scales inversely with the level splitting") {
  const WaveFunction wf = reference_case_1();
  WaveFunction detuned = wf;
  detuned.solution.omega0 *= 1000.0;
  const GaugeForm phi2 = compute_phi2(wf);
  const GaugeForm phi2_detuned = compute_phi2(detuned);
  for (const double x : {0.5, 1.5, 3.0}) {
    CHECK(phi2_detuned(x) ==
          doctest::Approx(phi2(x) / 1000.0).epsilon(1e-12));
  }
}

TEST_CASE("assembly requires a certified null vector") {
  const auto roots = determinant_roots({Family::R2, 0}, 1.0);
  QesSolution bad = roots[0];
  bad.certificate = std::nan("");
  CHECK_THROWS_AS(assemble_phi1(bad), std::invalid_argument);
  bad.certificate = 1.0;
  CHECK_THROWS_AS(assemble_phi1(bad), std::invalid_argument);
}
