#ifndef TPRH_QES_HPP
#define TPRH_QES_HPP

#include <Eigen/Dense>
#include <vector>

#include "tprh/algebra.hpp"

namespace tprh {

/// Dimensionless parameters of the two-photon Rabi spectral problem:
/// omega0 is the scaled level splitting, g the scaled coupling.
struct TprhParams {
  double omega0;
  double g;
};

/// One quasi-exactly-solvable family: the subspace family plus its size N.
/// alpha and s are fixed by the family (R2: alpha=-3/4, s=-1/2;
/// R3: alpha=3/4-N/2, s=1/2).
struct QesBranch {
  Family family;
  int n_max;

  SubspaceSpec subspace() const;
};

/// Derived branch quantities at coupling g in (0,1).
struct BranchParams {
  double alpha;
  double s;
  double c;       // gauge exponent, phi ~ e^{-c x^2} * (...)
  double xi;      // argument scale, t = xi x^2
  double energy;  // E(g) on this branch
  double a0;      // scalar term of the reduced operator
};

BranchParams branch_parameters(const QesBranch& branch, double g);

/// Reduced operator on the invariant subspace, assembled from the
/// generator matrices under the row-action composition rule:
///   R2:  4g^2 (J-)^2 + 4g S - 2g^2 J- + 4 J+ - (omega0^2 + a0)
///   R3:  4g^2 (J-)^2 - 4g S - 2g^2 J- + 4 J+ - (omega0^2 + a0)
OperatorMatrix build_l1_matrix(const QesBranch& branch,
                               const TprhParams& params);

double l1_determinant(const QesBranch& branch, double omega0, double g);

/// One QES point: the coupling root, its energy, and the left null vector
/// of the reduced matrix (the wavefunction coefficients).
struct QesSolution {
  QesBranch branch;
  double omega0;
  double g;
  double energy;
  Eigen::VectorXd null_vector;  // v with v^T L1 = 0, unit norm
  double certificate;           // ||L1^T v|| / ||v||
};

/// Determinant values of the reduced matrix on a uniform interior grid of
/// g in (0,1). OpenMP-parallel; the serial version is the test reference.
std::vector<double> scan_determinants(const QesBranch& branch, double omega0,
                                      int grid_points);
std::vector<double> scan_determinants_serial(const QesBranch& branch,
                                             double omega0, int grid_points);

inline constexpr int kDetGridPoints = 2000;

/// All coupling roots g in (0,1) of det L1(omega0, g) = 0: sign-change scan
/// on the uniform grid followed by bisection to |dg| < 1e-12. Each root is
/// packaged with the branch energy and the SVD null vector of the transpose.
std::vector<QesSolution> determinant_roots(const QesBranch& branch,
                                           double omega0,
                                           int grid_points = kDetGridPoints);

/// Closed-form coupling value, flagged when it sits on the window boundary
/// (g = 0 there, which violates 0 < g < 1).
struct ClosedFormRoot {
  double g;
  bool boundary;
};

/// Closed-form coupling curves g(omega0). Known for the (R2, N=0) and
/// (R3, N=2) branches only; throws std::invalid_argument for others.
/// Returns values inside the validity windows, empty outside.
std::vector<ClosedFormRoot> closed_form_g(const QesBranch& branch,
                                          double omega0);

bool has_closed_form(const QesBranch& branch);

/// Roots for every omega0 in the list, OpenMP-parallel across the sweep
/// with output order fixed by the input; serial reference for tests.
std::vector<std::vector<QesSolution>> sweep_roots(
    const QesBranch& branch, const std::vector<double>& omega0s);
std::vector<std::vector<QesSolution>> sweep_roots_serial(
    const QesBranch& branch, const std::vector<double>& omega0s);

}  // namespace tprh

#endif
