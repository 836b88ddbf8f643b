#include "ahcurv/cli.hpp"

#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "ahcurv/constraint_lab.hpp"
#include "ahcurv/tensor_file.hpp"

namespace ahcurv {

namespace {

using nlohmann::json;

struct Common {
  std::uint64_t seed = 0;
  std::string json_path;
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--seed", common.seed, "Seed for every random choice")->capture_default_str();
  cmd->add_option("--json", common.json_path, "Write a machine-readable report to this path");
}

void write_report(const Common& common, const json& report) {
  if (common.json_path.empty()) return;
  std::ofstream out(common.json_path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot open " + common.json_path + " for writing");
  out << report.dump(2) << '\n';
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::ShapeError:
    case ErrorKind::DimensionTooSmall:
    case ErrorKind::InvalidArgument: return kExitUsage;
    case ErrorKind::NoSolution:
    case ErrorKind::NumericalFailure: return kExitNoSolution;
    case ErrorKind::HypothesisNotSatisfied: return kExitHypothesis;
    case ErrorKind::Inconclusive: return kExitInconclusive;
    default: return kExitCheckFailed;
  }
}

const char* verdict_word(bool ok) { return ok ? "pass" : "fail"; }

CurvatureTensor load_curvature(const std::string& path) {
  TensorFile file = read_tensor_file(path);
  const int n = file.tensor.n();
  if (n < 2) throw Error(ErrorKind::DimensionTooSmall, "tensor files need n >= 2");
  return CurvatureTensor(std::move(file.tensor), standard_structure(n));
}

json form_summary(const BilinearForm& form) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (form + form.transpose()), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = eig.eigenvalues();
  std::vector<double> values(ev.data(), ev.data() + ev.size());
  return json{{"min", ev.minCoeff()}, {"max", ev.maxCoeff()}, {"eigenvalues", values}};
}

// ---------------------------------------------------------------------------

struct GenArgs {
  Common common;
  int n = 0;
  std::string kind;
  std::optional<double> a, b, lambda, mu, nu;
  std::string out_path;
};

int cmd_gen(const GenArgs& args, std::ostream& out) {
  if (args.n < 2) throw Error(ErrorKind::DimensionTooSmall, "--n must be >= 2");
  const AdaptedStructure st(args.n);
  TensorFile file;
  file.kind = args.kind;
  file.seed = args.common.seed;
  json report{{"command", "gen"}, {"inputs", {{"n", args.n}, {"kind", args.kind}, {"seed", args.common.seed}}}};

  if (args.kind == "pencil") {
    if (!args.a || !args.b) throw Error(ErrorKind::InvalidArgument, "kind=pencil needs --a and --b");
    file.tensor = pencil(st, *args.a, *args.b);
    file.params = {{"a", *args.a}, {"b", *args.b}};
  } else if (args.kind == "random-rk") {
    SeededSampler sampler(args.common.seed);
    FourTensor raw(args.n);
    for (double& v : raw.components()) v = sampler.normal();
    FourTensor t = project_rk(project_curvature(raw), st);
    t *= 1.0 / t.frobenius_norm();
    file.tensor = std::move(t);
  } else if (args.kind == "constrained") {
    if (!args.lambda || !args.mu || !args.nu)
      throw Error(ErrorKind::InvalidArgument, "kind=constrained needs --lambda, --mu and --nu");
    if (args.n < 3) throw Error(ErrorKind::DimensionTooSmall, "kind=constrained needs --n >= 3");
    SeededSampler sampler(args.common.seed);
    const ConstrainedSample cs = constrained_sample(st, *args.lambda, *args.mu, *args.nu, sampler);
    file.tensor = cs.tensor;
    file.params = {{"lambda", *args.lambda}, {"mu", *args.mu}, {"nu", *args.nu}, {"c", cs.c},
                   {"solution_dimension", cs.solution_dimension}};
    report["solution_dimension"] = cs.solution_dimension;
    report["residuals"] = {{"posterior_max_dev", cs.posterior_max_dev}};
    report["c"] = cs.c;
    report["inputs"]["lambda"] = *args.lambda;
    report["inputs"]["mu"] = *args.mu;
    report["inputs"]["nu"] = *args.nu;
    out << "solution_dimension " << cs.solution_dimension << '\n';
    out << "c " << format_double(cs.c) << '\n';
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown kind " + args.kind);
  }

  if (args.out_path.empty()) {
    out << serialize_tensor_file(file);
  } else {
    write_tensor_file(args.out_path, file);
    out << "wrote " << args.out_path << '\n';
  }
  report["output"] = args.out_path;
  report["frobenius_norm"] = file.tensor.frobenius_norm();
  write_report(args.common, report);
  return kExitPass;
}

struct CheckArgs {
  Common common;
  std::string file;
  double tol = 1e-9;
};

int cmd_check(const CheckArgs& args, std::ostream& out) {
  const TensorFile file = read_tensor_file(args.file);
  const FourTensor& t = file.tensor;
  if (t.n() < 2) throw Error(ErrorKind::DimensionTooSmall, "tensor files need n >= 2");
  const AdaptedStructure st(t.n());
  const SymmetryReport rep = validate_curvature_symmetries(t);
  const double rk = rk_residual(t, st);
  const double bound = args.tol * std::max(1.0, t.frobenius_norm());
  const bool ok = rep.worst() <= bound && rk <= bound;

  out << "skew12 " << format_double(rep.skew12) << '\n';
  out << "skew34 " << format_double(rep.skew34) << '\n';
  out << "bianchi " << format_double(rep.bianchi) << '\n';
  out << "pair_symmetry " << format_double(rep.pair_symmetry) << '\n';
  out << "rk " << format_double(rk) << '\n';
  out << "verdict " << verdict_word(ok) << '\n';

  write_report(args.common,
               {{"command", "check"},
                {"inputs", {{"file", args.file}, {"n", t.n()}}},
                {"tolerances", {{"tol", args.tol}, {"bound", bound}}},
                {"residuals",
                 {{"skew12", rep.skew12}, {"skew34", rep.skew34}, {"bianchi", rep.bianchi},
                  {"pair_symmetry", rep.pair_symmetry}, {"rk", rk}}},
                {"verdicts", {{"all", verdict_word(ok)}}}});
  return ok ? kExitPass : kExitCheckFailed;
}

struct InvariantsArgs {
  Common common;
  std::string file;
};

int cmd_invariants(const InvariantsArgs& args, std::ostream& out) {
  const CurvatureTensor r = load_curvature(args.file);
  const InvariantBundle inv = invariants(r);
  std::optional<double> bnorm;
  if (r.n() >= 3 && r.is_rk()) bnorm = bochner(r).frobenius_norm();
  const json s = form_summary(inv.S);
  const json sp = form_summary(inv.S_star);

  out << "tau " << format_double(inv.tau) << '\n';
  out << "tau_star " << format_double(inv.tau_star) << '\n';
  out << "bochner_norm " << (bnorm ? format_double(*bnorm) : std::string("n/a")) << '\n';
  out << "S eigenvalues [" << format_double(s["min"].get<double>()) << ", " << format_double(s["max"].get<double>())
      << "]\n";
  out << "S* eigenvalues [" << format_double(sp["min"].get<double>()) << ", "
      << format_double(sp["max"].get<double>()) << "]\n";

  write_report(args.common, {{"command", "invariants"},
                             {"inputs", {{"file", args.file}, {"n", r.n()}}},
                             {"tau", inv.tau},
                             {"tau_star", inv.tau_star},
                             {"bochner_norm", bnorm ? json(*bnorm) : json("n/a")},
                             {"rk", r.is_rk()},
                             {"S", s},
                             {"S_star", sp}});
  return kExitPass;
}

struct VerifyArgs {
  Common common;
  std::string file;
  double lambda = 0.0, mu = 0.0, nu = 0.0;
  double tol = 1e-6;
  int samples = 64;
  // lemma
  int n = 0;
  std::string mode = "exact";
  std::string planes = "both";
  int plane_count = 800;
  int max_enlargements = 3;
};

json theorem_json(const TheoremReport& rep) {
  json j{{"case", to_string(rep.theorem_case)},
         {"condition_dev", rep.condition_dev},
         {"c_est", rep.c_est},
         {"proportionality_residual", rep.proportionality_residual},
         {"relative_bochner_norm", rep.relative_bochner_norm}};
  j["bochner_norm"] = rep.bochner_norm ? json(*rep.bochner_norm) : json(nullptr);
  return j;
}

int cmd_verify_theorem(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  const CurvatureTensor r = load_curvature(args.file);
  SeededSampler sampler(args.common.seed);
  json report{{"command", "verify theorem"},
              {"inputs", {{"file", args.file}, {"n", r.n()}, {"lambda", args.lambda}, {"mu", args.mu},
                          {"nu", args.nu}, {"seed", args.common.seed}, {"samples", args.samples}}},
              {"tolerances", {{"tol", args.tol}}}};
  try {
    const TheoremReport rep = verify_theorem(r, args.lambda, args.mu, args.nu, sampler, args.tol, args.samples);
    report["residuals"] = theorem_json(rep);
    report["verdicts"] = {{"bochner", to_string(rep.bochner_verdict)},
                          {"proportionality", to_string(rep.proportionality_verdict)},
                          {"theorem", verdict_word(rep.passed())}};
    out << "case " << to_string(rep.theorem_case) << '\n';
    out << "condition_dev " << format_double(rep.condition_dev) << '\n';
    out << "c_est " << format_double(rep.c_est) << '\n';
    out << "bochner_norm " << (rep.bochner_norm ? format_double(*rep.bochner_norm) : std::string("n/a")) << '\n';
    out << "proportionality_residual " << format_double(rep.proportionality_residual) << '\n';
    out << "verdict " << verdict_word(rep.passed()) << '\n';
    write_report(args.common, report);
    return rep.passed() ? kExitPass : kExitCheckFailed;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::HypothesisNotSatisfied) throw;
    const double dev = e.measured().value_or(0.0);
    report["residuals"] = {{"condition_dev", dev}};
    report["verdicts"] = {{"theorem", "hypothesis_not_satisfied"}};
    write_report(args.common, report);
    out << "hypothesis not satisfied: max deviation " << format_double(dev) << '\n';
    err << e.what() << '\n';
    return kExitHypothesis;
  }
}

int cmd_verify_corollary(const VerifyArgs& args, std::ostream& out) {
  const CurvatureTensor r = load_curvature(args.file);
  SeededSampler sampler(args.common.seed);
  const CorollaryReport rep = verify_corollary(r, sampler, args.tol, args.samples);
  out << "sectional_dev " << format_double(rep.sectional_dev) << '\n';
  out << "relative_bochner_norm " << format_double(rep.relative_bochner_norm) << '\n';
  out << "ricci_residual " << format_double(rep.ricci_residual) << '\n';
  out << "forward " << to_string(rep.forward.verdict) << '\n';
  out << "reverse " << to_string(rep.reverse.verdict) << '\n';
  write_report(args.common,
               {{"command", "verify corollary"},
                {"inputs", {{"file", args.file}, {"n", r.n()}, {"seed", args.common.seed}, {"samples", args.samples}}},
                {"tolerances", {{"tol", args.tol}}},
                {"residuals",
                 {{"sectional_dev", rep.sectional_dev},
                  {"sectional_mean", rep.sectional_mean},
                  {"relative_bochner_norm", rep.relative_bochner_norm},
                  {"ricci_residual", rep.ricci_residual}}},
                {"verdicts", {{"forward", to_string(rep.forward.verdict)}, {"reverse", to_string(rep.reverse.verdict)}}}});
  return rep.passed() ? kExitPass : kExitCheckFailed;
}

int cmd_verify_lemma(const VerifyArgs& args, std::ostream& out) {
  LemmaConfig config;
  config.seed = args.common.seed;
  config.float_plane_count = args.plane_count;
  config.max_enlargements = args.max_enlargements;
  config.holomorphic_planes = args.planes != "antiholomorphic";
  config.antiholomorphic_planes = args.planes != "holomorphic";
  const LemmaMode mode = args.mode == "exact" ? LemmaMode::exact : LemmaMode::float_svd;
  json report{{"command", "verify lemma"},
              {"inputs", {{"n", args.n}, {"mode", args.mode}, {"planes", args.planes}, {"seed", args.common.seed},
                          {"plane_count", args.plane_count}, {"max_enlargements", args.max_enlargements}}},
              {"tolerances", {{"float_threshold", config.float_threshold}}}};
  try {
    const LemmaResult res = lemma_kernel_dimension(args.n, mode, config);
    const bool ok = res.kernel_dimension == 0;
    out << "kernel dimension " << res.kernel_dimension << '\n';
    out << "space dimension " << res.space_dimension << '\n';
    out << "constraint rows " << res.constraint_rows << '\n';
    if (mode == LemmaMode::float_svd)
      out << "smallest retained ratio " << format_double(res.smallest_retained_ratio) << '\n';
    out << "verdict " << verdict_word(ok) << '\n';
    report["kernel_dimension"] = res.kernel_dimension;
    report["space_dimension"] = res.space_dimension;
    report["constraint_rows"] = res.constraint_rows;
    report["enlargements"] = res.enlargements;
    report["residuals"] = {{"smallest_retained_ratio", res.smallest_retained_ratio}};
    report["verdicts"] = {{"lemma", verdict_word(ok)}};
    write_report(args.common, report);
    return ok ? kExitPass : kExitCheckFailed;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Inconclusive) throw;
    report["verdicts"] = {{"lemma", "inconclusive"}};
    report["kernel_dimension_last"] = e.measured().value_or(-1.0);
    write_report(args.common, report);
    out << "inconclusive\n";
    throw;
  }
}

int cmd_verify_replay(const VerifyArgs& args, std::ostream& out) {
  const CurvatureTensor r = load_curvature(args.file);
  SeededSampler sampler(args.common.seed);
  const ReplayReport rep = replay_derivation(r, args.lambda, args.mu, args.nu, sampler, args.samples);
  const bool ok = rep.worst_relative() <= args.tol;
  json residuals = json::object();
  for (const auto& tag : replay_tags()) {
    const double v = rep.residuals.at(tag);
    residuals[tag] = v;
    out << tag << ' ' << format_double(v) << '\n';
  }
  out << "c1 " << format_double(rep.c1_formula) << '\n';
  out << "verdict " << verdict_word(ok) << '\n';
  write_report(args.common,
               {{"command", "verify replay"},
                {"inputs", {{"file", args.file}, {"n", r.n()}, {"lambda", args.lambda}, {"mu", args.mu},
                            {"nu", args.nu}, {"seed", args.common.seed}, {"samples", args.samples}}},
                {"tolerances", {{"tol", args.tol}, {"scale", rep.scale}}},
                {"residuals", residuals},
                {"c_est", rep.c_est},
                {"c1", rep.c1_formula},
                {"verdicts", {{"replay", verdict_word(ok)}}}});
  return ok ? kExitPass : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pointwise curvature toolkit for almost Hermitian structures", "ahcurv"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a tensor file");
  gen_cmd->add_option("--n", gen.n, "Complex dimension")->required();
  gen_cmd->add_option("--kind", gen.kind, "random-rk | pencil | constrained")
      ->required()
      ->check(CLI::IsMember({"random-rk", "pencil", "constrained"}));
  gen_cmd->add_option("--a", gen.a, "pi1 coefficient (pencil)");
  gen_cmd->add_option("--b", gen.b, "pi2 coefficient (pencil)");
  gen_cmd->add_option("--lambda", gen.lambda);
  gen_cmd->add_option("--mu", gen.mu);
  gen_cmd->add_option("--nu", gen.nu);
  gen_cmd->add_option("--out", gen.out_path, "Output path (stdout when omitted)");
  add_common(gen_cmd, gen.common);

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Report curvature symmetry and RK residuals");
  check_cmd->add_option("file", check.file)->required();
  check_cmd->add_option("--tol", check.tol)->capture_default_str();
  add_common(check_cmd, check.common);

  InvariantsArgs inv;
  auto* inv_cmd = app.add_subcommand("invariants", "Print tau, tau*, |B| and Ricci spectra");
  inv_cmd->add_option("file", inv.file)->required();
  add_common(inv_cmd, inv.common);

  VerifyArgs ver;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification");
  verify_cmd->require_subcommand(1);
  auto add_coefficients = [&](CLI::App* c) {
    c->add_option("--lambda", ver.lambda)->required();
    c->add_option("--mu", ver.mu)->required();
    c->add_option("--nu", ver.nu)->required();
  };
  auto* theorem_cmd = verify_cmd->add_subcommand("theorem", "Check the classification theorem on a tensor");
  theorem_cmd->add_option("file", ver.file)->required();
  add_coefficients(theorem_cmd);
  auto* corollary_cmd = verify_cmd->add_subcommand("corollary", "Check both directions of the corollary");
  corollary_cmd->add_option("file", ver.file)->required();
  auto* lemma_cmd = verify_cmd->add_subcommand("lemma", "Kernel dimension of the vanishing lemma");
  lemma_cmd->add_option("--n", ver.n)->required();
  lemma_cmd->add_option("--mode", ver.mode)->check(CLI::IsMember({"exact", "float"}))->capture_default_str();
  lemma_cmd->add_option("--planes", ver.planes)
      ->check(CLI::IsMember({"both", "holomorphic", "antiholomorphic"}))
      ->capture_default_str();
  lemma_cmd->add_option("--plane-count", ver.plane_count)->capture_default_str();
  lemma_cmd->add_option("--max-enlargements", ver.max_enlargements)->capture_default_str();
  auto* replay_cmd = verify_cmd->add_subcommand("replay", "Replay the intermediate identities");
  replay_cmd->add_option("file", ver.file)->required();
  add_coefficients(replay_cmd);
  for (CLI::App* c : {theorem_cmd, corollary_cmd, replay_cmd}) {
    c->add_option("--tol", ver.tol)->capture_default_str();
    c->add_option("--samples", ver.samples)->capture_default_str();
  }
  for (CLI::App* c : {theorem_cmd, corollary_cmd, lemma_cmd, replay_cmd}) add_common(c, ver.common);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, out);
    if (check_cmd->parsed()) return cmd_check(check, out);
    if (inv_cmd->parsed()) return cmd_invariants(inv, out);
    if (theorem_cmd->parsed()) return cmd_verify_theorem(ver, out, err);
    if (corollary_cmd->parsed()) return cmd_verify_corollary(ver, out);
    if (lemma_cmd->parsed()) return cmd_verify_lemma(ver, out);
    if (replay_cmd->parsed()) {
      if (ver.lambda == 0.0) throw Error(ErrorKind::InvalidArgument, "replay needs --lambda != 0");
      return cmd_verify_replay(ver, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (e.kind() == ErrorKind::HypothesisNotSatisfied && e.measured())
      err << "measured deviation " << format_double(*e.measured()) << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ahcurv
