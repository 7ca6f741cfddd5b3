#include "tprh/kummer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tprh {

namespace {

constexpr int kTermBudget = 500;
constexpr double kTol = 1e-15;

}  // namespace

namespace detail {

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

double kummer_series_direct(double a, double b, double t) {
  // term_{k+1} = term_k * (a+k)/(b+k) * t/(k+1), term_0 = 1.
  double sum = 1.0;
  double comp = 0.0;  // Kahan compensation
  double term = 1.0;
  for (int k = 0; k < kTermBudget; ++k) {
    term *= (a + k) / (b + k) * t / (k + 1);
    if (term == 0.0) return sum;  // terminating series
    const double y = term - comp;
    const double next = sum + y;
    comp = (next - sum) - y;
    sum = next;
    // Tail bound: once terms decay geometrically (past the hump at k ~ |t|),
    // the remainder is below |term|, so 2|term| < tol|sum| is a safe stop.
    if (k + 1 > std::abs(t) && 2.0 * std::abs(term) < kTol * std::abs(sum)) {
      return sum;
    }
  }
  throw std::runtime_error(
      "kummer series did not converge within 500 terms (a=" +
      std::to_string(a) + ", b=" + std::to_string(b) +
      ", t=" + std::to_string(t) + ")");
}

}  // namespace detail

KummerFunction::KummerFunction(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("kummer parameters must be finite");
  }
  if (detail::is_nonpositive_integer(b)) {
    throw std::invalid_argument("kummer denominator parameter b=" +
                                std::to_string(b) +
                                " is a non-positive integer");
  }
}

double eval_kummer(const KummerFunction& f, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("t must be finite");
  const double a = f.a();
  const double b = f.b();
  // A non-positive integer a terminates the series exactly; summing the
  // finite polynomial directly keeps large-|t| values free of tail terms.
  if (t >= 0.0 || detail::is_nonpositive_integer(a)) {
    return detail::kummer_series_direct(a, b, t);
  }
  // 1F1(a;b;t) = e^t 1F1(b-a;b;-t): the reflected series at -t > 0 avoids
  // the catastrophic cancellation of the alternating direct series.
  return std::exp(t) * detail::kummer_series_direct(b - a, b, -t);
}

double eval_kummer_derivative(const KummerFunction& f, int k, double t) {
  if (k < 0) throw std::invalid_argument("derivative order must be >= 0");
  if (k == 0) return eval_kummer(f, t);
  // (a)_k/(b)_k prefactor; each b+j must avoid the poles of (b)_k.
  double factor = 1.0;
  for (int j = 0; j < k; ++j) {
    if (detail::is_nonpositive_integer(f.b() + j)) {
      throw std::domain_error("derivative shift hits a pole of (b)_k at b+" +
                              std::to_string(j));
    }
    factor *= (f.a() + j) / (f.b() + j);
  }
  if (factor == 0.0) return 0.0;  // polynomial case differentiated to death
  return factor * eval_kummer(KummerFunction(f.a() + k, f.b() + k), t);
}

double eval_basis(const BasisFunction& bf, double t) {
  const double mono =
      bf.monomial_power == 0 ? 1.0 : std::pow(t, bf.monomial_power);
  return mono * eval_kummer(bf.kummer, t);
}

double eval_basis_derivative(const BasisFunction& bf, int k, double t) {
  if (k < 0 || k > 4) {
    throw std::invalid_argument("basis derivative order must be in [0, 4]");
  }
  const int n = bf.monomial_power;
  if (n == 0 && k == 0) return eval_kummer(bf.kummer, t);
  // Leibniz: d^k(t^n F) = sum_j C(k,j) (t^n)^{(j)} F^{(k-j)}.
  double sum = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) binom *= static_cast<double>(k - j + 1) / j;
    if (j > n) break;  // monomial differentiated away
    double mono = 1.0;
    for (int m = 0; m < j; ++m) mono *= (n - m);
    if (n - j > 0) mono *= std::pow(t, n - j);
    sum += binom * mono * eval_kummer_derivative(bf.kummer, k - j, t);
  }
  return sum;
}

double Polynomial::operator()(double t) const {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * t + *it;
  return v;
}

Polynomial Polynomial::derivative() const {
  Polynomial d;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    d.coeffs.push_back(static_cast<double>(k) * coeffs[k]);
  }
  return d;
}

Polynomial Polynomial::shifted_up() const {
  if (coeffs.empty()) return {};
  Polynomial p;
  p.coeffs.assign(coeffs.size() + 1, 0.0);
  for (std::size_t k = 0; k < coeffs.size(); ++k) p.coeffs[k + 1] = coeffs[k];
  return p;
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
  Polynomial r;
  r.coeffs.assign(std::max(p.coeffs.size(), q.coeffs.size()), 0.0);
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) r.coeffs[k] += p.coeffs[k];
  for (std::size_t k = 0; k < q.coeffs.size(); ++k) r.coeffs[k] += q.coeffs[k];
  return r;
}

Polynomial operator*(double c, const Polynomial& p) {
  Polynomial r = p;
  for (auto& x : r.coeffs) x *= c;
  return r;
}

namespace {

double horner(std::span<const double> coeffs, double t) {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * t + *it;
  return v;
}

}  // namespace

double apply_operator(std::span<const double> p2, std::span<const double> p1,
                      std::span<const double> p0, const BasisFunction& bf,
                      double t) {
  double v = 0.0;
  if (!p2.empty()) v += horner(p2, t) * eval_basis_derivative(bf, 2, t);
  if (!p1.empty()) v += horner(p1, t) * eval_basis_derivative(bf, 1, t);
  if (!p0.empty()) v += horner(p0, t) * eval_basis(bf, t);
  return v;
}

double apply_operator(const DiffOp& op, const BasisFunction& bf, double t) {
  return apply_operator(op.p2.coeffs, op.p1.coeffs, op.p0.coeffs, bf, t);
}

}  // namespace tprh
