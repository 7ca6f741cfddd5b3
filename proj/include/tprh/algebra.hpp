#ifndef TPRH_ALGEBRA_HPP
#define TPRH_ALGEBRA_HPP

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "tprh/kummer.hpp"

namespace tprh {

enum class Family { R2, R3 };

/// Invariant subspace of Kummer-type functions.
///
/// R2: span{ t^n 1F1[alpha; s; t], t^n 1F1[alpha+1; s+1; t] : n = 0..N },
///     dimension 2(N+1).
/// R3: span{ 1F1[alpha+n; s; t] : n = 0..N }, dimension N+1.
struct SubspaceSpec {
  Family family;
  int n_max;     // N
  double alpha;
  double s;

  int dim() const {
    return family == Family::R2 ? 2 * (n_max + 1) : n_max + 1;
  }
};

/// Throws std::invalid_argument if the spec violates the subspace
/// invariants (N < 0, or s a non-positive integer, which would put a
/// Kummer denominator parameter on a pole).
void validate(const SubspaceSpec& spec);

/// Matrix of an operator on a subspace, row-action convention:
///   (J f_i) = sum_j m(i, j) f_j
/// i.e. row i holds the expansion of the image of the i-th basis function.
/// Under this convention operator composition A∘B (apply B first) maps to
/// the matrix product m(B) * m(A), and the operator commutator [A, B] maps
/// to m(B)*m(A) - m(A)*m(B).
struct OperatorMatrix {
  SubspaceSpec space;
  Eigen::MatrixXd m;

  int dim() const { return static_cast<int>(m.rows()); }
};

struct GeneratorPair {
  OperatorMatrix plus;
  OperatorMatrix minus;
};

/// Basis functions in the fixed order: R2 lists the f+ block then the
/// f- block (f0+ ... fN+, f0- ... fN-); R3 lists f0 ... fN.
std::vector<BasisFunction> basis_order(const SubspaceSpec& spec);

/// Generator matrices J2± on an R2 subspace. The f_{N+1}± coefficients of
/// the raising action vanish identically (B_N = 0), so images stay inside.
GeneratorPair build_j2(const SubspaceSpec& spec);

/// Generator matrices J3± on an R3 subspace; J3- is diagonal with entries
/// n + alpha, J3+ is tridiagonal.
GeneratorPair build_j3(const SubspaceSpec& spec);

GeneratorPair build_generators(const SubspaceSpec& spec);

/// S = [J+, J-] as a row-action matrix: m(J-)*m(J+) - m(J+)*m(J-).
OperatorMatrix commutator_s(const OperatorMatrix& jplus,
                            const OperatorMatrix& jminus);

/// Differential-operator coefficient polynomials (in t) of the generators.
DiffOp jminus_diffop(const SubspaceSpec& spec);
DiffOp jplus_diffop(const SubspaceSpec& spec);

/// Residual report for the quadratic commutation relations.
///
/// Raising relation, checked under all four sign choices for the last
/// two structure terms:
///   [J+, S] = 4 J+J- - 2 S - c5 J+  (+/-) c6 J-  (+/-) c7
/// Lowering relation (fixed form):
///   [J-, S] = -2 (J-)^2 - J+ + c5 J- - const
/// Residuals are Frobenius norms of lhs - rhs.
struct RelationReport {
  struct Variant {
    int sign_c6;
    int sign_c7;
    double residual;
  };
  std::array<Variant, 4> raising;
  double lowering;

  const Variant& best() const;
  bool passes(double tol) const;
};

RelationReport check_quadratic_relations(const SubspaceSpec& spec);

/// R2 spec whose generators coincide with J3±(alpha', s', N') as
/// differential operators. Defined for odd N' only; throws otherwise.
SubspaceSpec parameter_map_r2_to_r3(double alpha_p, double s_p, int n_p);

}  // namespace tprh

#endif
