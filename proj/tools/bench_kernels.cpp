// Timing comparison of the OpenMP kernels against their serial reference
// implementations. Each kernel pair must agree bit-for-bit; the benchmark
// reports wall times, speedup, and the maximum deviation.

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "tprh/fock.hpp"
#include "tprh/quadrature.hpp"
#include "tprh/wavefunction.hpp"

namespace {

template <typename F>
double time_best_of(int reps, F&& work) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = omp_get_wtime();
    work();
    best = std::min(best, omp_get_wtime() - t0);
  }
  return best;
}

void report(const char* name, double t_serial, double t_parallel,
            double max_dev) {
  std::printf("%-28s serial %8.3f ms   omp %8.3f ms   speedup %5.2fx   max|d| %g\n",
              name, 1e3 * t_serial, 1e3 * t_parallel, t_serial / t_parallel,
              max_dev);
}

}  // namespace

int main() {
  using namespace tprh;
  std::printf("threads: %d\n", omp_get_max_threads());

  {
    const QesBranch branch{Family::R3, 2};
    std::vector<double> ds, dp;
    const double ts = time_best_of(
        3, [&] { ds = scan_determinants_serial(branch, 1.0, 20000); });
    const double tp =
        time_best_of(3, [&] { dp = scan_determinants(branch, 1.0, 20000); });
    double dev = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      dev = std::max(dev, std::abs(ds[i] - dp[i]));
    }
    report("determinant scan (20k)", ts, tp, dev);
  }

  {
    const QesBranch branch{Family::R3, 2};
    std::vector<double> omegas;
    for (int i = 0; i < 48; ++i) omegas.push_back(0.6 + 1.8 * i / 47.0);
    std::vector<std::vector<QesSolution>> rs, rp;
    const double ts =
        time_best_of(1, [&] { rs = sweep_roots_serial(branch, omegas); });
    const double tp = time_best_of(1, [&] { rp = sweep_roots(branch, omegas); });
    double dev = 0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
      for (std::size_t k = 0; k < rs[i].size(); ++k) {
        dev = std::max(dev, std::abs(rs[i][k].g - rp[i][k].g));
      }
    }
    report("root sweep (48 omega0)", ts, tp, dev);
  }

  {
    const TprhParams params{1.0, 0.5};
    const fock::FockTruncation trunc{1500};
    Eigen::MatrixXd hs, hp;
    const double ts =
        time_best_of(3, [&] { hs = fock::build_hamiltonian_serial(params, trunc); });
    const double tp =
        time_best_of(3, [&] { hp = fock::build_hamiltonian(params, trunc); });
    report("fock build (nmax=1500)", ts, tp, (hs - hp).cwiseAbs().maxCoeff());
  }

  {
    const QesBranch branch{Family::R2, 0};
    const auto roots = determinant_roots(branch, 1.0);
    const WaveFunction wf = assemble_phi1(roots.front());
    std::vector<double> xs;
    for (int i = 0; i < 4000; ++i) xs.push_back(-8.0 + 16.0 * i / 3999.0);
    std::vector<SampleRow> ss, sp;
    const double ts = time_best_of(3, [&] { ss = sample_serial(wf, xs); });
    const double tp = time_best_of(3, [&] { sp = sample(wf, xs); });
    double dev = 0;
    for (std::size_t i = 0; i < ss.size(); ++i) {
      dev = std::max(dev, std::abs(ss[i].phi1 - sp[i].phi1));
      dev = std::max(dev, std::abs(ss[i].phi2 - sp[i].phi2));
    }
    report("wavefunction sample (4k)", ts, tp, dev);
  }

  {
    const auto f = [](double x) { return std::exp(-0.3 * x * x) * std::cos(x); };
    double is = 0, ip = 0;
    const double ts = time_best_of(
        5, [&] { is = integrate_panels_serial(f, -12.0, 12.0, 4096); });
    const double tp =
        time_best_of(5, [&] { ip = integrate_panels(f, -12.0, 12.0, 4096); });
    report("quadrature (4096 panels)", ts, tp, std::abs(is - ip));
  }

  return 0;
}
