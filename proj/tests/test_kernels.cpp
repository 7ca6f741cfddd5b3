#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tprh/fock.hpp"
#include "tprh/quadrature.hpp"
#include "tprh/wavefunction.hpp"

using namespace tprh;

// The OpenMP kernels fill independent slots and combine partial results in
// a fixed order, so they must agree with the serial references bit for bit
// regardless of the thread count.

TEST_CASE("determinant scan: parallel equals serial exactly") {
  for (const auto& [branch, w] : {std::pair{QesBranch{Family::R2, 0}, 0.9},
                                  std::pair{QesBranch{Family::R3, 2}, 1.4}}) {
    const auto serial = scan_determinants_serial(branch, w, 3000);
    const auto parallel = scan_determinants(branch, w, 3000);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(serial[i] == parallel[i]);
    }
  }
}

TEST_CASE("root sweep: parallel equals serial exactly") {
  std::vector<double> omegas;
  for (int i = 0; i < 12; ++i) omegas.push_back(0.6 + 1.7 * i / 11.0);
  const auto serial = sweep_roots_serial({Family::R3, 2}, omegas);
  const auto parallel = sweep_roots({Family::R3, 2}, omegas);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    REQUIRE(serial[i].size() == parallel[i].size());
    for (std::size_t k = 0; k < serial[i].size(); ++k) {
      CHECK(serial[i][k].g == parallel[i][k].g);
      CHECK(serial[i][k].energy == parallel[i][k].energy);
      CHECK(serial[i][k].null_vector == parallel[i][k].null_vector);
    }
  }
}

TEST_CASE("hamiltonian fill: parallel equals serial exactly") {
  const TprhParams params{0.8, 0.45};
  const Eigen::MatrixXd a = fock::build_hamiltonian_serial(params, {300});
  const Eigen::MatrixXd b = fock::build_hamiltonian(params, {300});
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("wavefunction sampling: parallel equals serial exactly") {
  const auto roots = determinant_roots({Family::R2, 0}, 1.0);
  const WaveFunction wf = assemble_phi1(roots.front());
  std::vector<double> xs;
  for (int i = 0; i < 501; ++i) xs.push_back(-6.0 + 12.0 * i / 500.0);
  const auto serial = sample_serial(wf, xs);
  const auto parallel = sample(wf, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(serial[i].phi1 == parallel[i].phi1);
    CHECK(serial[i].phi2 == parallel[i].phi2);
  }
}

TEST_CASE("panel quadrature: parallel equals serial exactly") {
  const auto f = [](double x) { return std::exp(-0.4 * x * x) * std::cos(x); };
  const double serial = integrate_panels_serial(f, -10.0, 10.0, 160);
  const double parallel = integrate_panels(f, -10.0, 10.0, 160);
  CHECK(serial == parallel);
}

TEST_CASE("kernels are deterministic across repeated runs") {
  const auto first = scan_determinants({Family::R3, 2}, 1.1, 2000);
  const auto second = scan_determinants({Family::R3, 2}, 1.1, 2000);
  CHECK(first == second);
}

TEST_CASE("gauss-legendre panel rule") {
  const auto& rule = GaussLegendreRule::panel_rule();
  REQUIRE(rule.nodes.size() == 16);
  double wsum = 0.0;
  for (std::size_t i = 0; i < 16; ++i) {
    wsum += rule.weights[i];
    CHECK(rule.nodes[i] == -rule.nodes[15 - i]);
  }
  CHECK(std::abs(wsum - 2.0) < 1e-14);

  // Exact for polynomials through degree 31 on one panel.
  const double x6 =
      integrate_panels_serial([](double x) { return std::pow(x, 6); }, -1.0,
                              1.0, 1);
  CHECK(x6 == doctest::Approx(2.0 / 7.0).epsilon(1e-14));

  const double gauss = integrate_panels_serial(
      [](double x) { return std::exp(-x * x); }, -6.0, 6.0, 24);
  CHECK(gauss ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK_THROWS_AS(GaussLegendreRule::make(1), std::invalid_argument);
  CHECK_THROWS_AS(integrate_panels_serial([](double) { return 0.0; }, 0, 1, 0),
                  std::invalid_argument);
}
