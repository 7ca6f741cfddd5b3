#include "tprh/algebra.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tprh {

void validate(const SubspaceSpec& spec) {
  if (spec.n_max < 0) throw std::invalid_argument("subspace N must be >= 0");
  if (detail::is_nonpositive_integer(spec.s)) {
    throw std::invalid_argument("subspace parameter s=" +
                                std::to_string(spec.s) +
                                " is a non-positive integer");
  }
}

std::vector<BasisFunction> basis_order(const SubspaceSpec& spec) {
  validate(spec);
  std::vector<BasisFunction> basis;
  if (spec.family == Family::R2) {
    for (int n = 0; n <= spec.n_max; ++n) {
      basis.push_back({KummerFunction(spec.alpha, spec.s), n});
    }
    for (int n = 0; n <= spec.n_max; ++n) {
      basis.push_back({KummerFunction(spec.alpha + 1, spec.s + 1), n});
    }
  } else {
    for (int n = 0; n <= spec.n_max; ++n) {
      basis.push_back({KummerFunction(spec.alpha + n, spec.s), 0});
    }
  }
  return basis;
}

GeneratorPair build_j2(const SubspaceSpec& spec) {
  if (spec.family != Family::R2) {
    throw std::invalid_argument("build_j2 requires an R2 spec");
  }
  validate(spec);
  const int N = spec.n_max;
  const double alpha = spec.alpha;
  const double s = spec.s;
  const int dim = 2 * (N + 1);
  Eigen::MatrixXd jp = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(dim, dim);
  const auto ip = [](int n) { return n; };
  const auto im = [N](int n) { return N + 1 + n; };
  for (int n = 0; n <= N; ++n) {
    const double A = n - 2.0 * N;
    const double B = n - 1.0 * N;
    // J+ f_n^+ = n(A-1+s) f_n^+ - B f_{n+1}^+ + (2 alpha B / s) f_{n+1}^-
    jp(ip(n), ip(n)) += n * (A - 1 + s);
    if (n + 1 <= N) {
      jp(ip(n), ip(n + 1)) += -B;
      jp(ip(n), im(n + 1)) += 2.0 * alpha * B / s;
    }
    // J+ f_n^- = (s-n)(1-A) f_n^- + B f_{n+1}^- + s(2B-1) f_n^+
    jp(im(n), im(n)) += (s - n) * (1 - A);
    if (n + 1 <= N) jp(im(n), im(n + 1)) += B;
    jp(im(n), ip(n)) += s * (2 * B - 1);
    // J- f_n^+ = (alpha-n) f_n^+ + n(n+s) f_{n-1}^+ + alpha(1+2n)/s f_n^-
    jm(ip(n), ip(n)) += alpha - n;
    if (n >= 1) jm(ip(n), ip(n - 1)) += n * (n + s);
    jm(ip(n), im(n)) += alpha * (1 + 2 * n) / s;
    // J- f_n^- = (alpha+n+1) f_n^- + n(n-s) f_{n-1}^- + 2ns f_{n-1}^+
    jm(im(n), im(n)) += alpha + n + 1;
    if (n >= 1) {
      jm(im(n), im(n - 1)) += n * (n - s);
      jm(im(n), ip(n - 1)) += 2.0 * n * s;
    }
  }
  return {{spec, std::move(jp)}, {spec, std::move(jm)}};
}

GeneratorPair build_j3(const SubspaceSpec& spec) {
  if (spec.family != Family::R3) {
    throw std::invalid_argument("build_j3 requires an R3 spec");
  }
  validate(spec);
  const int N = spec.n_max;
  const double alpha = spec.alpha;
  const double s = spec.s;
  const int dim = N + 1;
  Eigen::MatrixXd jp = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n <= N; ++n) {
    const double an = n + alpha;
    const double Cn = an * (N - 2.0 * n);
    const double Bn = n - 1.0 * N;
    jm(n, n) = an;
    jp(n, n) += s * n + Cn;
    if (n + 1 <= N) jp(n, n + 1) += an * Bn;
    if (n >= 1) jp(n, n - 1) += n * (an - s);
  }
  return {{spec, std::move(jp)}, {spec, std::move(jm)}};
}

GeneratorPair build_generators(const SubspaceSpec& spec) {
  return spec.family == Family::R2 ? build_j2(spec) : build_j3(spec);
}

OperatorMatrix commutator_s(const OperatorMatrix& jplus,
                            const OperatorMatrix& jminus) {
  if (jplus.dim() != jminus.dim()) {
    throw std::invalid_argument("commutator_s: dimension mismatch");
  }
  return {jplus.space, jminus.m * jplus.m - jplus.m * jminus.m};
}

DiffOp jminus_diffop(const SubspaceSpec& spec) {
  // R2: t f'' + (1+s-t) f';  R3: t f'' + (s-t) f'
  const double c0 = spec.family == Family::R2 ? 1 + spec.s : spec.s;
  return {{{0.0, 1.0}}, {{c0, -1.0}}, {{}}};
}

DiffOp jplus_diffop(const SubspaceSpec& spec) {
  // R2: t^2 f'' + (s-2N-t) t f' + t(N-alpha) f
  // R3: t^2 f'' + (s-N-t) t f' - alpha t f
  const int N = spec.n_max;
  if (spec.family == Family::R2) {
    return {{{0.0, 0.0, 1.0}},
            {{0.0, spec.s - 2.0 * N, -1.0}},
            {{0.0, N - spec.alpha}}};
  }
  return {{{0.0, 0.0, 1.0}},
          {{0.0, spec.s - 1.0 * N, -1.0}},
          {{0.0, -spec.alpha}}};
}

const RelationReport::Variant& RelationReport::best() const {
  return *std::min_element(raising.begin(), raising.end(),
                           [](const Variant& u, const Variant& v) {
                             return u.residual < v.residual;
                           });
}

bool RelationReport::passes(double tol) const {
  return best().residual < tol && lowering < tol;
}

RelationReport check_quadratic_relations(const SubspaceSpec& spec) {
  const auto [plus, minus] = build_generators(spec);
  const Eigen::MatrixXd& jp = plus.m;
  const Eigen::MatrixXd& jm = minus.m;
  const int dim = plus.dim();
  const double N = spec.n_max;
  const double alpha = spec.alpha;
  const double s = spec.s;
  double c5, c6, c7, lower_const;
  if (spec.family == Family::R2) {
    c5 = 2 * (1 + alpha) + s;
    c6 = (2 * N - s) * (s - 2 - 2 * N);
    c7 = (N - alpha) * (2 + 2 * N - s) * (s + 1);
    lower_const = (alpha - N) * (s + 1);
  } else {
    c5 = s + 2 * alpha + N;
    c6 = (N + 2 - s) * (N - s);
    c7 = s * alpha * (N + 2 - s);
    lower_const = s * alpha;
  }
  // Row-action mapping: operator product J+J- (apply J- first) becomes
  // m(J-)*m(J+); commutators reverse the same way.
  const Eigen::MatrixXd S = jm * jp - jp * jm;
  const Eigen::MatrixXd lhs_raise = S * jp - jp * S;
  const Eigen::MatrixXd lhs_lower = S * jm - jm * S;
  const Eigen::MatrixXd prod = jm * jp;  // J+ J-
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);

  RelationReport report{};
  int i = 0;
  for (int s6 : {+1, -1}) {
    for (int s7 : {+1, -1}) {
      const Eigen::MatrixXd rhs =
          4.0 * prod - 2.0 * S - c5 * jp + s6 * c6 * jm + s7 * c7 * id;
      report.raising[i++] = {s6, s7, (lhs_raise - rhs).norm()};
    }
  }
  const Eigen::MatrixXd rhs_lower =
      -2.0 * (jm * jm) - jp + c5 * jm - lower_const * id;
  report.lowering = (lhs_lower - rhs_lower).norm();
  return report;
}

SubspaceSpec parameter_map_r2_to_r3(double alpha_p, double s_p, int n_p) {
  if (n_p <= 0 || n_p % 2 == 0) {
    throw std::invalid_argument(
        "parameter map is defined for odd positive N' only, got " +
        std::to_string(n_p));
  }
  const int half = (n_p - 1) / 2;
  return {Family::R2, half, alpha_p + half, s_p - 1};
}

}  // namespace tprh
