#ifndef TPRH_KUMMER_HPP
#define TPRH_KUMMER_HPP

#include <span>
#include <vector>

namespace tprh {

/// Kummer's confluent hypergeometric function 1F1(a; b; t),
/// evaluated by its Taylor series with compensated summation.
///
/// The denominator parameter b must not be a non-positive integer,
/// where 1F1 has poles; construction throws std::invalid_argument.
class KummerFunction {
public:
  KummerFunction(double a, double b);

  double a() const { return a_; }
  double b() const { return b_; }

private:
  double a_;
  double b_;
};

/// One basis function t^n * 1F1(a; b; t). The monomial power is zero for
/// subspaces built from parameter-shifted Kummer functions.
struct BasisFunction {
  KummerFunction kummer;
  int monomial_power = 0;
};

/// Series evaluation of 1F1(a; b; t).
///
/// Relative accuracy ~1e-13 for |t| <= 50. Arguments t < 0 are routed
/// through the reflection 1F1(a;b;t) = e^t 1F1(b-a;b;-t) so the summed
/// series has non-alternating tail terms; terminating series (a a
/// non-positive integer) are summed directly and stay exact polynomials.
/// Throws std::runtime_error if the 500-term budget is exhausted.
double eval_kummer(const KummerFunction& f, double t);

/// k-th derivative via the contiguous shift
/// d^k/dt^k 1F1(a;b;t) = (a)_k/(b)_k * 1F1(a+k; b+k; t).
/// Throws std::domain_error when the shift hits a pole of (b)_k.
double eval_kummer_derivative(const KummerFunction& f, int k, double t);

/// t^n * 1F1 and its t-derivatives (Leibniz over the monomial). Derivative
/// orders up to 4 are supported; the wavefunction residual needs 4.
double eval_basis(const BasisFunction& bf, double t);
double eval_basis_derivative(const BasisFunction& bf, int k, double t);

/// Dense polynomial in one variable, coefficients in ascending order.
struct Polynomial {
  std::vector<double> coeffs;

  double operator()(double t) const;
  Polynomial derivative() const;
  Polynomial shifted_up() const;  // multiply by the variable
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

Polynomial operator+(const Polynomial& p, const Polynomial& q);
Polynomial operator*(double c, const Polynomial& p);

/// Pointwise action p2(t) f'' + p1(t) f' + p0(t) f of a second-order
/// differential operator on a basis function.
double apply_operator(std::span<const double> p2, std::span<const double> p1,
                      std::span<const double> p0, const BasisFunction& bf,
                      double t);

/// Second-order differential operator with polynomial coefficients.
struct DiffOp {
  Polynomial p2, p1, p0;
};

double apply_operator(const DiffOp& op, const BasisFunction& bf, double t);

namespace detail {

/// Plain Taylor summation without the negative-argument reflection.
/// Exposed so tests can cross-validate the reflection path.
double kummer_series_direct(double a, double b, double t);

bool is_nonpositive_integer(double x);

}  // namespace detail

}  // namespace tprh

#endif
