#include "tprh/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "tprh/fock.hpp"
#include "tprh/io.hpp"
#include "tprh/wavefunction.hpp"

namespace tprh {
namespace cli {

namespace {

Family parse_family(const std::string& name) {
  if (name == "r2" || name == "R2") return Family::R2;
  if (name == "r3" || name == "R3") return Family::R3;
  throw std::invalid_argument("unknown family '" + name + "' (use r2 or r3)");
}

std::string family_name(Family f) { return f == Family::R2 ? "r2" : "r3"; }

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale < 1e-12) return 0.0;
  return std::abs(a - b) / scale;
}

void print_matrix(const std::string& label, const Eigen::MatrixXd& m) {
  const Eigen::IOFormat fmt(10, 0, "  ", "\n", "  [", "]");
  std::cout << label << " =\n" << m.format(fmt) << "\n";
}

// ---------------------------------------------------------------- verify
struct VerifyArgs {
  std::string family;
  int n = 0;
  double alpha = 0;
  double s = 0;
};

int cmd_verify_algebra(const VerifyArgs& a) {
  const SubspaceSpec spec{parse_family(a.family), a.n, a.alpha, a.s};
  validate(spec);
  const auto [plus, minus] = build_generators(spec);
  const OperatorMatrix s_mat = commutator_s(plus, minus);
  std::cout << "subspace " << family_name(spec.family) << " N=" << spec.n_max
            << " alpha=" << spec.alpha << " s=" << spec.s
            << " dim=" << spec.dim() << "\n";
  print_matrix("J+", plus.m);
  print_matrix("J-", minus.m);
  print_matrix("S = [J+,J-]", s_mat.m);

  const RelationReport report = check_quadratic_relations(spec);
  std::cout << "quadratic relation residuals (raising relation):\n";
  for (const auto& v : report.raising) {
    std::printf("  c6 sign %+d, c7 sign %+d: %.3e\n", v.sign_c6, v.sign_c7,
                v.residual);
  }
  const auto& best = report.best();
  std::printf("  best variant: (%+d, %+d) residual %.3e\n", best.sign_c6,
              best.sign_c7, best.residual);
  std::printf("lowering relation residual: %.3e\n", report.lowering);

  // Differential spot checks: the matrix action against the pointwise
  // action of the generator differential operators.
  const std::vector<BasisFunction> basis = basis_order(spec);
  const DiffOp plus_op = jplus_diffop(spec);
  const DiffOp minus_op = jminus_diffop(spec);
  double worst = 0.0;
  for (const double t : {0.3, 0.7, 1.1, 1.9, 2.6}) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (const auto* op : {&plus_op, &minus_op}) {
        const Eigen::MatrixXd& m = (op == &plus_op) ? plus.m : minus.m;
        const double lhs = apply_operator(*op, basis[i], t);
        double rhs = 0.0;
        for (std::size_t j = 0; j < basis.size(); ++j) {
          rhs += m(i, j) * eval_basis(basis[j], t);
        }
        worst = std::max(worst, rel_diff(lhs, rhs));
      }
    }
  }
  std::printf("differential action max rel deviation: %.3e\n", worst);

  const bool ok = report.passes(1e-9) && worst < 1e-9;
  std::cout << (ok ? "OK" : "FAILED") << "\n";
  return ok ? kExitOk : kExitCertification;
}

// ----------------------------------------------------------------- solve
struct SolveArgs {
  std::string family;
  int n = 0;
  double omega0_min = 0.6;
  double omega0_max = 1.4;
  int steps = 9;
  std::string out;
};

int cmd_solve(const SolveArgs& a) {
  const QesBranch branch{parse_family(a.family), a.n};
  if (a.steps < 1 || !(a.omega0_max >= a.omega0_min) || a.omega0_min <= 0) {
    throw std::invalid_argument("empty solve window");
  }
  if (!has_closed_form(branch)) {
    std::cerr << "note: no closed-form curve for this branch; numeric roots "
                 "are unverified by the reference solutions\n";
  }
  std::vector<double> omegas(a.steps);
  for (int i = 0; i < a.steps; ++i) {
    omegas[i] = a.steps == 1 ? a.omega0_min
                             : a.omega0_min + (a.omega0_max - a.omega0_min) *
                                                  i / (a.steps - 1);
  }
  const auto roots = sweep_roots(branch, omegas);
  std::vector<std::vector<io::Cell>> rows;
  for (int i = 0; i < a.steps; ++i) {
    std::vector<io::Cell> row(9);
    row[0] = omegas[i];
    for (std::size_t k = 0; k < roots[i].size() && k < 2; ++k) {
      row[1 + 2 * k] = roots[i][k].g;
      row[2 + 2 * k] = roots[i][k].energy;
    }
    if (has_closed_form(branch)) {
      std::size_t k = 0;
      for (const auto& cf : closed_form_g(branch, omegas[i])) {
        if (cf.boundary || k >= 2) continue;
        // Pair each closed-form value with the nearest numeric root.
        double best = std::numeric_limits<double>::quiet_NaN();
        for (const auto& r : roots[i]) {
          if (!std::isfinite(best) || std::abs(r.g - cf.g) < best) {
            best = std::abs(r.g - cf.g);
          }
        }
        row[5 + 2 * k] = cf.g;
        if (std::isfinite(best)) row[6 + 2 * k] = best;
        ++k;
      }
    }
    rows.push_back(std::move(row));
  }
  io::write_csv(a.out, {},
                {"omega0", "g_1", "E_1", "g_2", "E_2", "g_closed_1",
                 "abs_diff_1", "g_closed_2", "abs_diff_2"},
                rows);
  io::write_manifest(a.out, "solve",
                     {{"family", a.family},
                      {"n", std::to_string(a.n)},
                      {"omega0_min", io::format_double(a.omega0_min)},
                      {"omega0_max", io::format_double(a.omega0_max)},
                      {"steps", std::to_string(a.steps)}});
  std::cout << "wrote " << a.out << " (" << rows.size() << " rows)\n";
  return kExitOk;
}

// ---------------------------------------------------------------- oracle
struct OracleArgs {
  double omega0 = 1.0;
  double g = 0.0;
  int nmax = 400;
  bool allow_supercritical = false;
  std::string out;
};

int cmd_oracle(const OracleArgs& a) {
  const fock::SpectrumResult result =
      fock::spectrum({a.omega0, a.g}, {a.nmax}, {a.allow_supercritical});
  nlohmann::json j;
  j["omega0"] = a.omega0;
  j["g"] = a.g;
  j["nmax"] = result.nmax_used;
  j["convergence_gap"] = result.convergence_gap;
  j["eigenvalues"] = result.eigenvalues;
  std::ofstream out(a.out);
  if (!out) throw std::runtime_error("cannot open " + a.out);
  out << j.dump(2) << "\n";
  out.close();
  io::write_manifest(a.out, "oracle",
                     {{"omega0", io::format_double(a.omega0)},
                      {"g", io::format_double(a.g)},
                      {"nmax", std::to_string(a.nmax)},
                      {"allow_supercritical",
                       a.allow_supercritical ? "true" : "false"}});
  std::cout << "wrote " << a.out << " (" << result.eigenvalues.size()
            << " eigenvalues, convergence gap "
            << io::format_double(result.convergence_gap) << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------- wavefunction
struct WaveArgs {
  std::string case_tag;
  std::string family;
  int n = 0;
  double omega0 = 1.0;
  int root_index = 0;
  double xmax = 6.0;
  int samples = 121;
  std::string out;
};

int cmd_wavefunction(const WaveArgs& a) {
  QesBranch branch{Family::R2, 0};
  double omega0 = a.omega0;
  int root_index = a.root_index;
  if (!a.case_tag.empty()) {
    if (a.case_tag == "b1") {
      branch = {Family::R2, 0};
      omega0 = 1.0;
      root_index = 0;
    } else if (a.case_tag == "b2") {
      branch = {Family::R3, 2};
      omega0 = 1.0;
      root_index = 1;  // the larger coupling root
    } else {
      throw std::invalid_argument("unknown case tag '" + a.case_tag +
                                  "' (use b1 or b2)");
    }
  } else {
    if (a.family.empty()) {
      throw std::invalid_argument("pass either --case or --family/--n");
    }
    branch = {parse_family(a.family), a.n};
  }
  if (a.samples < 2 || a.xmax <= 0) {
    throw std::invalid_argument("need samples >= 2 and xmax > 0");
  }
  const auto roots = determinant_roots(branch, omega0);
  if (roots.empty()) {
    throw std::invalid_argument("no QES coupling root at omega0=" +
                                io::format_double(omega0));
  }
  if (root_index < 0 || root_index >= static_cast<int>(roots.size())) {
    throw std::invalid_argument("root index out of range (found " +
                                std::to_string(roots.size()) + " roots)");
  }
  const WaveFunction wf = normalized(assemble_phi1(roots[root_index]));
  const double res = residual(wf);
  const double decay = decay_exponent(wf);

  std::vector<double> xs(a.samples);
  for (int i = 0; i < a.samples; ++i) {
    xs[i] = -a.xmax + 2.0 * a.xmax * i / (a.samples - 1);
  }
  const auto table = sample(wf, xs);
  std::vector<std::vector<io::Cell>> rows;
  rows.reserve(table.size());
  for (const auto& r : table) rows.push_back({r.x, r.phi1, r.phi2});

  const BranchParams bp = branch_parameters(branch, wf.solution.g);
  std::vector<std::string> comments = {
      "family=" + family_name(branch.family) + " N=" +
          std::to_string(branch.n_max),
      "omega0=" + io::format_double(omega0),
      "g=" + io::format_double(wf.solution.g),
      "E=" + io::format_double(wf.solution.energy),
      "residual=" + io::format_double(res),
      "decay_exponent=" + io::format_double(decay),
      "gauge_c=" + io::format_double(bp.c),
      "arg_scale_xi=" + io::format_double(bp.xi)};
  io::write_csv(a.out, comments, {"x", "phi1", "phi2"}, rows);
  io::write_manifest(a.out, "wavefunction",
                     {{"case", a.case_tag},
                      {"family", family_name(branch.family)},
                      {"n", std::to_string(branch.n_max)},
                      {"omega0", io::format_double(omega0)},
                      {"root_index", std::to_string(root_index)},
                      {"xmax", io::format_double(a.xmax)},
                      {"samples", std::to_string(a.samples)}});
  std::printf("wrote %s: E=%.12g g=%.12g residual=%.3e decay=%.6g\n",
              a.out.c_str(), wf.solution.energy, wf.solution.g, res, decay);
  if (res >= 1e-7) {
    std::cerr << "residual certification failed (>= 1e-7)\n";
    return kExitCertification;
  }
  return kExitOk;
}

// ------------------------------------------------------------ crosscheck
struct CrossArgs {
  std::string family;
  int n = 0;
  double omega0 = 1.0;
  int nmax = 400;
};

int cmd_crosscheck(const CrossArgs& a) {
  const QesBranch branch{parse_family(a.family), a.n};
  const auto roots = determinant_roots(branch, a.omega0);
  if (roots.empty()) {
    std::cout << "no QES points at omega0=" << io::format_double(a.omega0)
              << "\n";
    return kExitOk;
  }
  bool all_ok = true;
  std::printf("%-12s %-22s %-22s %-12s\n", "g", "E_qes", "E_oracle", "diff");
  for (const auto& root : roots) {
    const fock::SpectrumResult spec =
        fock::spectrum({a.omega0, root.g}, {a.nmax});
    double nearest = spec.eigenvalues.front();
    for (const double ev : spec.eigenvalues) {
      if (std::abs(ev - root.energy) < std::abs(nearest - root.energy)) {
        nearest = ev;
      }
    }
    const double diff = std::abs(nearest - root.energy);
    all_ok = all_ok && diff < 1e-5;
    std::printf("%-12.8f %-22.15g %-22.15g %-12.3e\n", root.g, root.energy,
                nearest, diff);
  }
  std::cout << (all_ok ? "OK" : "FAILED") << "\n";
  return all_ok ? kExitOk : kExitCertification;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"quasi-exact spectra of the two-photon Rabi model"};
  app.set_version_flag("--version", io::kToolVersion);
  app.require_subcommand(1);

  VerifyArgs verify;
  auto* sub_verify = app.add_subcommand(
      "verify-algebra", "print generator matrices and relation residuals");
  sub_verify->add_option("--family", verify.family)->required();
  sub_verify->add_option("--n", verify.n)->required();
  sub_verify->add_option("--alpha", verify.alpha)->required();
  sub_verify->add_option("--s", verify.s)->required();

  SolveArgs solve;
  auto* sub_solve = app.add_subcommand(
      "solve", "sweep omega0 and solve the determinant condition for g");
  sub_solve->add_option("--family", solve.family)->required();
  sub_solve->add_option("--n", solve.n)->required();
  sub_solve->add_option("--omega0-min", solve.omega0_min)->required();
  sub_solve->add_option("--omega0-max", solve.omega0_max)->required();
  sub_solve->add_option("--steps", solve.steps)->required();
  sub_solve->add_option("--out", solve.out)->required();

  OracleArgs oracle;
  auto* sub_oracle = app.add_subcommand(
      "oracle", "truncated number-basis spectrum (JSON)");
  sub_oracle->add_option("--omega0", oracle.omega0)->required();
  sub_oracle->add_option("--g", oracle.g)->required();
  sub_oracle->add_option("--nmax", oracle.nmax)->required();
  sub_oracle->add_flag("--allow-supercritical", oracle.allow_supercritical);
  sub_oracle->add_option("--out", oracle.out)->required();

  WaveArgs wave;
  auto* sub_wave = app.add_subcommand(
      "wavefunction", "sample a certified QES eigenstate (CSV)");
  sub_wave->add_option("--case", wave.case_tag);
  sub_wave->add_option("--family", wave.family);
  sub_wave->add_option("--n", wave.n);
  sub_wave->add_option("--omega0", wave.omega0);
  sub_wave->add_option("--root", wave.root_index);
  sub_wave->add_option("--xmax", wave.xmax);
  sub_wave->add_option("--samples", wave.samples);
  sub_wave->add_option("--out", wave.out)->required();

  CrossArgs cross;
  auto* sub_cross = app.add_subcommand(
      "crosscheck", "compare QES energies against the oracle spectrum");
  sub_cross->add_option("--family", cross.family)->required();
  sub_cross->add_option("--n", cross.n)->required();
  sub_cross->add_option("--omega0", cross.omega0)->required();
  sub_cross->add_option("--nmax", cross.nmax);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sub_verify->parsed()) return cmd_verify_algebra(verify);
    if (sub_solve->parsed()) return cmd_solve(solve);
    if (sub_oracle->parsed()) return cmd_oracle(oracle);
    if (sub_wave->parsed()) return cmd_wavefunction(wave);
    if (sub_cross->parsed()) return cmd_crosscheck(cross);
  } catch (const std::invalid_argument& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCertification;
  }
  return kExitUsage;
}

}  // namespace cli
}  // namespace tprh
