#include "tprh/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tprh {
namespace fock {

namespace {

void validate(const TprhParams& params, const FockTruncation& trunc) {
  if (trunc.nmax < 2) {
    throw std::invalid_argument("fock truncation requires nmax >= 2");
  }
  if (!std::isfinite(params.omega0) || !std::isfinite(params.g)) {
    throw std::invalid_argument("fock parameters must be finite");
  }
}

// Row i of the (nmax+1)-dimensional component block for component sigma.
void fill_row(Eigen::MatrixXd& h, int d, int sigma, int n, double omega0,
              double g) {
  const int r = sigma * d + n;
  h(r, r) = n;
  h(r, (1 - sigma) * d + n) = omega0;
  const double sgn = sigma == 0 ? 1.0 : -1.0;
  if (n + 2 < d) {
    h(r, sigma * d + n + 2) =
        sgn * 0.5 * g * std::sqrt(double(n + 1) * (n + 2));
  }
  if (n - 2 >= 0) {
    h(r, sigma * d + n - 2) =
        sgn * 0.5 * g * std::sqrt(double(n - 1) * n);
  }
}

}  // namespace

Eigen::MatrixXd build_hamiltonian_serial(const TprhParams& params,
                                         const FockTruncation& trunc) {
  validate(params, trunc);
  const int d = trunc.nmax + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * d, 2 * d);
  for (int sigma = 0; sigma < 2; ++sigma) {
    for (int n = 0; n < d; ++n) fill_row(h, d, sigma, n, params.omega0, params.g);
  }
  return h;
}

Eigen::MatrixXd build_hamiltonian(const TprhParams& params,
                                  const FockTruncation& trunc) {
  validate(params, trunc);
  const int d = trunc.nmax + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * d, 2 * d);
#pragma omp parallel for schedule(static)
  for (int r = 0; r < 2 * d; ++r) {
    fill_row(h, d, r / d, r % d, params.omega0, params.g);
  }
  return h;
}

namespace {

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigensolver failed");
  }
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

}  // namespace

SpectrumResult spectrum(const TprhParams& params, const FockTruncation& trunc,
                        const SpectrumOptions& opts) {
  validate(params, trunc);
  if ((params.g >= 1.0 || params.g < 0.0) && !opts.allow_supercritical) {
    throw std::invalid_argument(
        "spectrum requires 0 <= g < 1 (unbounded below as the truncation "
        "grows); pass allow_supercritical for diagnostics");
  }
  SpectrumResult result;
  result.nmax_used = trunc.nmax;
  result.eigenvalues = sorted_eigenvalues(build_hamiltonian(params, trunc));
  const std::vector<double> half = sorted_eigenvalues(
      build_hamiltonian(params, {std::max(2, trunc.nmax / 2)}));
  const std::size_t window =
      std::min<std::size_t>(20, std::min(result.eigenvalues.size(), half.size()));
  double gap = 0.0;
  for (std::size_t k = 0; k < window; ++k) {
    gap = std::max(gap, std::abs(result.eigenvalues[k] - half[k]));
  }
  result.convergence_gap = gap;
  return result;
}

ParityBlocks parity_blocks(const TprhParams& params,
                           const FockTruncation& trunc) {
  const Eigen::MatrixXd h = build_hamiltonian(params, trunc);
  const int d = trunc.nmax + 1;
  // Photon numbers of fixed parity, both spinor components.
  std::vector<int> even, odd;
  for (int sigma = 0; sigma < 2; ++sigma) {
    for (int n = 0; n < d; ++n) {
      (n % 2 == 0 ? even : odd).push_back(sigma * d + n);
    }
  }
  const auto extract = [&h](const std::vector<int>& idx) {
    Eigen::MatrixXd b(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = 0; j < idx.size(); ++j) {
        b(i, j) = h(idx[i], idx[j]);
      }
    }
    return b;
  };
  return {extract(even), extract(odd)};
}

std::vector<double> eigenvalues_by_parity(const TprhParams& params,
                                          const FockTruncation& trunc) {
  const ParityBlocks blocks = parity_blocks(params, trunc);
  std::vector<double> all = sorted_eigenvalues(blocks.even);
  const std::vector<double> odd = sorted_eigenvalues(blocks.odd);
  all.insert(all.end(), odd.begin(), odd.end());
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace fock
}  // namespace tprh
