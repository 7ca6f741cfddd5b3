#ifndef TPRH_FOCK_HPP
#define TPRH_FOCK_HPP

#include <Eigen/Dense>
#include <vector>

#include "tprh/qes.hpp"

namespace tprh {
namespace fock {

/// Photon-number cutoff of the truncated oscillator basis. The two-component
/// matrix dimension is 2*(nmax+1).
struct FockTruncation {
  int nmax;
};

/// Dimensionless two-photon Rabi Hamiltonian in the truncated number basis:
/// diagonal blocks L± = n ± (g/2) sqrt((n+1)(n+2)) on the second
/// off-diagonals, omega0 times identity as the coupling blocks. The first
/// block holds the rows of the first spinor component. OpenMP-parallel row
/// fill; the serial version is the test reference.
Eigen::MatrixXd build_hamiltonian(const TprhParams& params,
                                  const FockTruncation& trunc);
Eigen::MatrixXd build_hamiltonian_serial(const TprhParams& params,
                                         const FockTruncation& trunc);

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  int nmax_used;
  double convergence_gap;  // max drift of the lowest 20 vs the nmax/2 run
};

struct SpectrumOptions {
  bool allow_supercritical = false;  // permit g >= 1 (diagnostic only)
};

/// Dense symmetric eigensolve of the truncated Hamiltonian, with the
/// convergence gap measured against the half-truncation run. Couplings
/// g >= 1 leave the spectrum unbounded below in the untruncated limit and
/// are refused unless explicitly allowed.
SpectrumResult spectrum(const TprhParams& params, const FockTruncation& trunc,
                        const SpectrumOptions& opts = {});

/// Even- and odd-photon-sector blocks (each spanning both spinor
/// components); the photon-pair coupling preserves number parity, so the
/// union of the block spectra equals the full spectrum.
struct ParityBlocks {
  Eigen::MatrixXd even;
  Eigen::MatrixXd odd;
};

ParityBlocks parity_blocks(const TprhParams& params,
                           const FockTruncation& trunc);

/// Sorted eigenvalues via the parity blocks (two half-size solves).
std::vector<double> eigenvalues_by_parity(const TprhParams& params,
                                          const FockTruncation& trunc);

}  // namespace fock
}  // namespace tprh

#endif
