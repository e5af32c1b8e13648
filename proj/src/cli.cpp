#include "maskobs/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "maskobs/bitcommit.hpp"
#include "maskobs/comask.hpp"
#include "maskobs/error.hpp"
#include "maskobs/io.hpp"
#include "maskobs/masking.hpp"
#include "maskobs/report.hpp"
#include "maskobs/selftest.hpp"

namespace maskobs::cli {

namespace {

struct Observable {
  Matrix matrix;
  ObservableCoeffs coeffs;
};

Observable to_observable(const Record& record, const std::string& source) {
  if (const auto* m = std::get_if<Matrix>(&record)) {
    if (m->rows() != m->cols()) throw Error(ErrorCode::DimensionMismatch, source + ": observable must be square");
    return Observable{*m, observable_coeffs(*m)};
  }
  if (const auto* c = std::get_if<ObservableCoeffs>(&record)) {
    return Observable{coeffs_to_observable(*c), *c};
  }
  throw Error(ErrorCode::ParseError, source + ": expected a matrix or coeffs record");
}

std::vector<Observable> load_observables(const std::string& path) {
  std::vector<Observable> out;
  for (const Record& r : parse_records(read_file(path))) out.push_back(to_observable(r, path));
  if (out.empty()) throw Error(ErrorCode::ParseError, path + ": no observable found");
  return out;
}

Observable load_observable(const std::string& path, int dim) {
  std::vector<Observable> all = load_observables(path);
  if (all.size() != 1) throw Error(ErrorCode::ParseError, path + ": expected one observable");
  if (dim > 0 && all.front().coeffs.dimension != dim) {
    throw Error(ErrorCode::DimensionMismatch, path + ": observable dimension differs from --dim");
  }
  return std::move(all.front());
}

std::vector<RealVector> load_bloch(const std::string& path, int dim) {
  std::vector<RealVector> out;
  for (const Record& r : parse_records(read_file(path))) {
    const auto* b = std::get_if<BlochVector>(&r);
    if (b == nullptr) throw Error(ErrorCode::ParseError, path + ": expected bloch records");
    if (b->dimension != dim) throw Error(ErrorCode::DimensionMismatch, path + ": bloch dimension differs from --dim");
    out.push_back(b->b);
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, path + ": no bloch vector found");
  return out;
}

Matrix load_unitary(const std::string& path) {
  const Record r = parse_matrix(read_file(path));
  const auto* m = std::get_if<Matrix>(&r);
  if (m == nullptr) throw Error(ErrorCode::ParseError, path + ": expected a matrix record");
  return *m;
}

RunReport maskable(const std::string& path, const std::string& method, int dim) {
  const Observable o = load_observable(path, dim);
  const int d = o.coeffs.dimension;
  RunReport report("maskable");
  report.add("dimension", d).add("a0", o.coeffs.a0).add("a_norm", o.coeffs.a.norm()).add("method", method);

  std::optional<MaskabilityVerdict> bloch;
  std::optional<MaskabilityVerdict> oracle;
  if (method != "oracle" && d == 2) bloch = decide_maskable_qubit(o.coeffs);
  if (method != "bloch") oracle = decide_maskable_oracle(o.matrix);
  const bool necessary = necessary_condition_d(o.coeffs);

  if (oracle) {
    report.add("maskable", oracle->maskable);
  } else if (bloch) {
    report.add("maskable", bloch->maskable);
  } else {
    // Bloch criterion for d > 2 is only the necessary condition.
    report.add("maskable", necessary ? std::string("undecided") : std::string("false"));
  }
  if (bloch) {
    report.add("bloch_criterion", bloch->maskable);
    report.add("plane_distance", bloch->plane_distance ? format_real(*bloch->plane_distance) : "undefined");
  }
  report.add("necessary_condition", necessary);
  report.add("necessary_threshold", necessary_threshold(d, o.coeffs.a0));
  if (oracle) {
    report.add("oracle", oracle->maskable);
    report.add("eig_range", format_real(oracle->eig_range->min) + " " + format_real(oracle->eig_range->max));
  }
  if (bloch && oracle) report.add("agreement", bloch->maskable == oracle->maskable);
  return report;
}

RunReport mask(const std::string& path, const std::string& out_path) {
  const Observable o = load_observable(path, 0);
  RunReport report("mask");
  report.add("dimension", o.coeffs.dimension);
  const MaskabilityVerdict verdict = decide_maskable_oracle(o.matrix);
  report.add("maskable", verdict.maskable);
  if (!verdict.maskable) return report;

  const Matrix sigma = masking_output_state(o.matrix);
  const KrausChannel channel = constant_channel(sigma, o.coeffs.dimension);
  const double residual = verify_masking(channel, o.matrix);
  report.add("output_state_bloch", state_to_bloch(sigma).b);
  report.add("kraus_count", channel.size());
  report.add("residual", residual);
  report.add("masked", residual < tol::kMasking);
  if (!out_path.empty()) {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw Error(ErrorCode::ParseError, "cannot write '" + out_path + "'");
    for (int i = 0; i < channel.size(); ++i) file << "# kraus " << i << "\n" << render(channel[i]);
  }
  return report;
}

RunReport nohide(double theta, double phi, const std::string& u0_path, const std::string& u1_path) {
  const Vec3 n(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
  const Matrix u0 = u0_path.empty() ? identity(2) : load_unitary(u0_path);
  const Matrix u1 = u1_path.empty() ? identity(2) : load_unitary(u1_path);
  const NoHidingReport r = verify_nohiding(n, u0, u1);
  RunReport report("nohide");
  report.add("n", RealVector(n));
  report.add("swap_residual", r.swap_residual);
  report.add("recovery_residual", r.recovery_residual);
  report.add("no_hiding_verified", r.verified);
  return report;
}

void add_qubit_slice(RunReport& report, const std::vector<RealVector>& points, int k) {
  try {
    std::optional<ComaskDescription> desc;
    if (k == 0) {
      desc = comask_from_point(points.front());
    } else if (k == 1) {
      // Endpoints: the two points farthest apart.
      std::size_t bi = 0, bj = 1;
      double best = -1.0;
      for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
          if (const double dist = (points[i] - points[j]).norm(); dist > best) {
            best = dist;
            bi = i;
            bj = j;
          }
      desc = comask_from_line(points[bi], points[bj]);
    } else {
      desc = comask_from_planar(points);
    }
    report.add("qubit_a0_zero_kind", std::string(to_string(desc->kind)));
    report.add("qubit_a0_zero_base", desc->set.base);
    report.add("qubit_a0_zero_dim", desc->set.affine_dim());
  } catch (const Error& e) {
    report.add("qubit_a0_zero_kind", "none (" + std::string(to_string(e.code())) + ")");
  }
}

RunReport comask(const std::string& path, int dim) {
  const std::vector<RealVector> points = load_bloch(path, dim);
  const GeneralComask g = comask_general(points, dim);
  RunReport report("comask");
  report.add("dimension", dim).add("points", static_cast<int>(points.size()));
  report.add("k", g.k);
  report.add("affine_dim", g.description.set.affine_dim());
  report.add("expected_affine_dim", dim * dim - g.k - 1);
  report.add("m", g.m);
  report.add("base", g.description.set.base);
  if (dim == 2) add_qubit_slice(report, points, g.k);
  return report;
}

RunReport common_state(const std::vector<std::string>& paths) {
  std::vector<ObservableCoeffs> coeffs;
  for (const std::string& path : paths)
    for (const Observable& o : load_observables(path)) coeffs.push_back(o.coeffs);
  const int d = coeffs.front().dimension;
  const CommonStateResult r = find_common_output_state(coeffs, d);
  RunReport report("common-state");
  report.add("dimension", d).add("observables", static_cast<int>(coeffs.size()));
  report.add("feasible", r.feasible);
  if (r.feasible) report.add("bloch", r.state.b);
  report.add("distance", r.distance);
  report.add("max_defect", r.max_defect);
  report.add("iterations", r.iterations);
  return report;
}

RunReport counterexample(const std::string& b_path, const std::string& bp_path, int dim) {
  const std::vector<RealVector> b = load_bloch(b_path, dim);
  const std::vector<RealVector> bp = load_bloch(bp_path, dim);
  const ObservableCoeffs c = universal_counterexample(b.front(), bp.front(), dim);
  RunReport report("counterexample");
  report.add("dimension", dim).add("a0", c.a0).add("a", c.a);
  report.add("defect_at_bprime", masking_defect(c, bp.front()));
  report.add("defect_at_b", masking_defect(c, b.front()));
  return report;
}

RunReport bitcommit(int dim, std::uint64_t seed) {
  const BitCommitReport r = no_bit_commitment_demo(dim, seed);
  RunReport report("bitcommit-demo");
  report.add("dimension", r.dimension).add("seed", r.seed);
  report.add("concealment_gap", r.concealment_gap);
  report.add("marginal_difference", r.marginal_difference);
  report.add("cheat_feasible", r.cheat_feasible);
  report.add("cheat_fidelity", r.cheat_fidelity);
  report.add("binding_broken", r.binding_broken);
  report.add("channel_kraus_count", r.kraus_count);
  report.add("proportional_checks", std::to_string(r.proportional_passed) + "/" + std::to_string(r.observables));
  report.add("max_proportional_residual", r.max_proportional_residual);
  report.add("unit_expectation", r.unit_expectation);
  report.add("masked", r.masked);
  report.add("masking_consistent", r.masking_consistent);
  report.add("hiding_vs_masking",
             "adjoint sends every O to Tr(rho_B O) I; it equals I only when Tr(rho_B O) = 1");
  report.add("conclusion",
             "perfect concealing breaks binding; a channel masking every observable would be a "
             "universal masker, and none exists");
  return report;
}

int selftest(std::ostream& out) {
  const std::vector<SelftestCheck> checks = run_selftest();
  int failed = 0;
  RunReport report("selftest");
  for (const SelftestCheck& c : checks) {
    report.add("check " + c.name, std::string(c.passed ? "pass " : "FAIL ") + c.detail);
    if (!c.passed) ++failed;
  }
  report.add("passed", static_cast<int>(checks.size()) - failed);
  report.add("failed", failed);
  out << report.render();
  return failed == 0 ? kExitOk : kExitSelftestFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Masking of quantum observables: decide, construct, verify"};
  app.require_subcommand(1);

  std::string observable;
  std::string method = "both";
  int dim = 0;
  auto* maskable_cmd = app.add_subcommand("maskable", "Decide whether an observable can be masked");
  maskable_cmd->add_option("--observable", observable, "Observable file (matrix or coeffs)")->required();
  maskable_cmd->add_option("--method", method, "bloch | oracle | both")
      ->check(CLI::IsMember({"bloch", "oracle", "both"}));
  maskable_cmd->add_option("--dim", dim, "Expected dimension");

  std::string out_path;
  auto* mask_cmd = app.add_subcommand("mask", "Build a constant masker and write its Kraus family");
  mask_cmd->add_option("--observable", observable, "Observable file")->required();
  mask_cmd->add_option("--out", out_path, "Kraus output file");

  double theta = 0.0;
  double phi = 0.0;
  std::string u0_path;
  std::string u1_path;
  auto* nohide_cmd = app.add_subcommand("nohide", "Check the no-hiding swap identity for n(theta, phi).sigma");
  nohide_cmd->add_option("--theta", theta, "Polar angle (radians)")->required();
  nohide_cmd->add_option("--phi", phi, "Azimuth (radians)")->required();
  nohide_cmd->add_option("--u0", u0_path, "Environment unitary u0 (matrix file)");
  nohide_cmd->add_option("--u1", u1_path, "Environment unitary u1 (matrix file)");

  std::string states;
  auto* comask_cmd = app.add_subcommand("comask", "Comaskable observables for a set of output states");
  comask_cmd->add_option("--states", states, "File of bloch records")->required();
  comask_cmd->add_option("--dim", dim, "Dimension")->required()->check(CLI::Range(2, 16));

  std::vector<std::string> observable_files;
  auto* common_cmd = app.add_subcommand("common-state", "Search for a common output state");
  common_cmd->add_option("--observables", observable_files, "Observable files")->required();

  std::string b_path;
  std::string bp_path;
  auto* counter_cmd = app.add_subcommand("counterexample", "Observable masked at b' but not at b");
  counter_cmd->add_option("--b", b_path, "bloch record for b")->required();
  counter_cmd->add_option("--bprime", bp_path, "bloch record for b'")->required();
  counter_cmd->add_option("--dim", dim, "Dimension")->required()->check(CLI::Range(2, 16));

  std::uint64_t seed = 0;
  auto* bitcommit_cmd = app.add_subcommand("bitcommit-demo", "Seeded no-bit-commitment run");
  bitcommit_cmd->add_option("--dim", dim, "Dimension")->required()->check(CLI::Range(2, 16));
  bitcommit_cmd->add_option("--seed", seed, "Seed")->required();

  auto* selftest_cmd = app.add_subcommand("selftest", "Run the invariant suites");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }

  try {
    std::optional<RunReport> report;
    if (*maskable_cmd) report = maskable(observable, method, dim);
    if (*mask_cmd) report = mask(observable, out_path);
    if (*nohide_cmd) report = nohide(theta, phi, u0_path, u1_path);
    if (*comask_cmd) report = comask(states, dim);
    if (*common_cmd) report = common_state(observable_files);
    if (*counter_cmd) report = counterexample(b_path, bp_path, dim);
    if (*bitcommit_cmd) report = bitcommit(dim, seed);
    if (*selftest_cmd) return selftest(out);
    if (report) out << report->render();
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::NumericalFailure ? kExitNumerical : kExitBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace maskobs::cli
