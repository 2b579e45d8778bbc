// Command-line front end: wires the synthesis oracles, the hull and axial
// constructions, diamond-distance certification, and the savings tables into
// reproducible batch runs. All file outputs are byte-deterministic for a
// fixed (command line, seed); every module error class maps to its own exit
// status (table in README.md).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <regex>
#include <string>

#include "CLI11.hpp"
#include "mixsynth/axial.hpp"
#include "mixsynth/channels.hpp"
#include "mixsynth/hull.hpp"
#include "mixsynth/json_io.hpp"
#include "mixsynth/mixing.hpp"
#include "mixsynth/rng.hpp"
#include "mixsynth/savings.hpp"

namespace {

using namespace mixsynth;

constexpr int kExitFalsified = 20;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError: return 2;
    case ErrorCode::SchemaError: return 3;
    case ErrorCode::UnreachablePrecision: return 4;
    case ErrorCode::BudgetTooLarge: return 5;
    case ErrorCode::MaxIterExceeded: return 6;
    case ErrorCode::NoOppositeRotation: return 7;
    case ErrorCode::ZNotFree: return 8;
    case ErrorCode::BranchAmbiguity: return 9;
    case ErrorCode::PhaseDegenerate: return 10;
    case ErrorCode::ConvergenceFailure: return 11;
    case ErrorCode::NumericalStall: return 12;
    case ErrorCode::SolverStall: return 13;
    case ErrorCode::HypothesisViolated: return 14;
    case ErrorCode::InvalidState: return 15;
    case ErrorCode::OutOfRegime: return 16;
    case ErrorCode::DimensionMismatch: return 17;
    case ErrorCode::InvalidArgument: return 18;
  }
  return 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::ConfigError, "cannot read file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return text;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(ErrorCode::ConfigError, "cannot write file: " + path);
  out << content;
  if (!out) raise(ErrorCode::ConfigError, "write failed: " + path);
}

UnitaryMatrix rotation(char axis, double theta) {
  switch (axis) {
    case 'z': return expi(HermitianMatrix(theta * pauli_z()));
    case 'x': return expi(HermitianMatrix(theta * pauli_x()));
    default: return expi(HermitianMatrix(theta * pauli_y()));
  }
}

// "Rz(0.3)" / "Rx(...)" / "Ry(...)" (R<axis>(theta) = exp(i theta <axis>)),
// anything else is a matrix-JSON path.
UnitaryMatrix parse_target(const std::string& spec) {
  static const std::regex kRot(R"(^R([xyz])\(([-+0-9.eE]+)\)$)");
  std::smatch m;
  if (std::regex_match(spec, m, kRot)) {
    try {
      return rotation(m[1].str()[0], std::stod(m[2].str()));
    } catch (const std::exception&) {
      raise(ErrorCode::ConfigError, "bad rotation angle in target: " + spec);
    }
  }
  const std::string text = read_file(spec);
  try {
    return UnitaryMatrix(matrix_from_json_text(text));
  } catch (const MixSynthError& e) {
    if (e.code() == ErrorCode::SchemaError) throw;
    raise(ErrorCode::ConfigError, std::string("target is not unitary: ") + e.what());
  }
}

bool is_axial(const UnitaryMatrix& v) {
  return v.dim() == 2 && std::abs(v.matrix()(0, 1)) + std::abs(v.matrix()(1, 0)) <= 1e-10;
}

double default_tol() {
  if (const char* env = std::getenv("MIXSYNTH_TOL")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      raise(ErrorCode::ConfigError, "MIXSYNTH_TOL is not a number");
    }
  }
  return 1e-7;
}

std::unique_ptr<SynthesisOracle> make_oracle(const std::string& kind, OracleDomain::Kind domain,
                                             std::uint64_t seed, int budget) {
  if (kind == "synthetic") {
    const CostModel model =
        domain == OracleDomain::Kind::Axial ? cost_model_axial_worst() : cost_model_rs();
    return std::make_unique<SyntheticOracle>(derive_seed("oracle", seed),
                                             OracleDomain{domain, 2}, model);
  }
  if (kind == "exhaustive") return std::make_unique<ExhaustiveCliffordTOracle>(budget);
  raise(ErrorCode::ConfigError, "unknown oracle: " + kind);
}

std::optional<double> theorem_claim(const MixingEnsemble& e) {
  if (!(e.eps > 0.0) || !(e.eps < 0.01)) return std::nullopt;
  return e.construction == "axial" ? theorem2_bound(e.eps) : theorem1_bound(e.eps);
}

struct MixArgs {
  std::string target;
  double eps = 1e-3;
  std::string oracle = "synthetic";
  std::uint64_t seed = 0;
  int budget = 6;
  double r = 2.0;
  double mu_tol = -1.0;
  int max_iter = 64;
  bool polish = false;
  std::string out_ensemble = "ensemble.json";
  std::string out_trace = "trace.jsonl";
  std::string out_report = "report.json";
};

int cmd_mix(const MixArgs& args) {
  if (!(args.eps > 0.0)) raise(ErrorCode::ConfigError, "eps must be positive");
  const UnitaryMatrix v = parse_target(args.target);

  HullConfig cfg;
  cfg.eps = args.eps;
  cfg.r = args.r;
  cfg.mu_tol = args.mu_tol;
  cfg.max_iter = args.max_iter;
  cfg.seed = args.seed;
  cfg.polish_operator_norm = args.polish;
  if (!cfg.in_theorem_regime())
    std::cerr << "warning: eps outside theorem regime eps < 0.01; no quadratic bound is claimed\n";

  auto oracle = make_oracle(args.oracle, OracleDomain::Kind::FullUnitary, args.seed, args.budget);
  const HullResult res = run_hull(v, *oracle, cfg);

  write_file(args.out_ensemble, ensemble_to_json(res.ensemble));
  write_file(args.out_trace, trace_to_jsonl(res.trace));
  write_file(args.out_report,
             report_to_json(lemma1_report(res.ensemble), theorem_claim(res.ensemble)));
  return 0;
}

struct AxialArgs {
  std::optional<double> theta;
  std::string target;
  double eps = 1e-3;
  std::string oracle = "synthetic";
  std::uint64_t seed = 0;
  int budget = 6;
  std::string out_ensemble = "ensemble.json";
  std::string out_report = "report.json";
};

int cmd_axial(const AxialArgs& args) {
  if (!(args.eps > 0.0)) raise(ErrorCode::ConfigError, "eps must be positive");
  if (args.theta.has_value() == !args.target.empty())
    raise(ErrorCode::ConfigError, "give exactly one of --theta or --target");
  const UnitaryMatrix v = args.theta ? rotation('z', *args.theta) : parse_target(args.target);
  if (!is_axial(v)) raise(ErrorCode::ConfigError, "axial command requires a Z-diagonal target");

  auto oracle = make_oracle(args.oracle, OracleDomain::Kind::Axial, args.seed, args.budget);
  AxialEnsemble ax = build_axial_ensemble(v, *oracle, args.eps);
  ax.ensemble.seed = args.seed;
  if (ax.single_member)
    std::cerr << "note: the first answer sits on the rotation boundary;"
                 " the second rotation is not needed\n";

  write_file(args.out_ensemble, ensemble_to_json(ax));
  write_file(args.out_report,
             report_to_json(lemma1_report(ax.ensemble), theorem_claim(ax.ensemble)));
  return 0;
}

struct CertifyArgs {
  std::string ensemble_path;
  double tol = default_tol();
  std::string out = "certificate.json";
};

int cmd_certify(const CertifyArgs& args) {
  const EnsembleFile file = ensemble_from_json_text(read_file(args.ensemble_path));
  const MixedUnitaryChannel channel = as_channel(file.ensemble);

  DiamondCertificate cert = diamond_distance_upper(channel, file.ensemble.target, args.tol);
  const double sweep = diamond_distance_lower(channel, file.ensemble.target);
  cert.lower = std::max(cert.lower, sweep);
  cert.method += "+sweep-lower";
  cert = DiamondCertificate::validated(std::move(cert));

  const std::optional<double> claim = theorem_claim(file.ensemble);
  const bool falsified = claim.has_value() && cert.lower > *claim;
  write_file(args.out, certificate_to_json(cert, claim, falsified));
  if (falsified) {
    std::cerr << "falsified: certified lower bound " << cert.lower
              << " exceeds the claimed bound " << *claim << "\n";
    return kExitFalsified;
  }
  return 0;
}

struct SavingsArgs {
  double alpha = 10.0;
  double eps_min = 1e-12;
  double eps_max = 1e-2;
  int points = 11;
  std::string model = "rs";
  std::string out = "savings.csv";
};

int cmd_savings(const SavingsArgs& args) {
  if (!(args.eps_min > 0.0) || !(args.eps_max < 1.0) || args.eps_min > args.eps_max)
    raise(ErrorCode::ConfigError, "need 0 < eps-min <= eps-max < 1");
  if (args.points < 1) raise(ErrorCode::ConfigError, "points must be at least 1");
  CostModel model = cost_model_rs();
  if (args.model == "axial-worst") model = cost_model_axial_worst();
  else if (args.model == "axial-average") model = cost_model_axial_average();
  else if (args.model != "rs") raise(ErrorCode::ConfigError, "unknown cost model: " + args.model);

  // Log-spaced, descending from eps-max toward the limit.
  std::vector<double> grid;
  for (int i = 0; i < args.points; ++i) {
    const double t = args.points == 1 ? 0.0
                                      : static_cast<double>(i) / (args.points - 1);
    grid.push_back(std::exp(std::log(args.eps_max) +
                            t * (std::log(args.eps_min) - std::log(args.eps_max))));
  }
  write_file(args.out, savings_csv(fig1_curve(model, args.alpha, grid)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probabilistic gate-synthesis mixing toolkit"};
  app.require_subcommand(1);

  MixArgs mix;
  CLI::App* mix_cmd = app.add_subcommand("mix", "build a mixing ensemble with the hull loop");
  mix_cmd->add_option("--target", mix.target, "Rz(t)/Rx(t)/Ry(t) or a matrix JSON path")->required();
  mix_cmd->add_option("--eps", mix.eps, "synthesis precision")->required();
  mix_cmd->add_option("--oracle", mix.oracle, "synthetic | exhaustive");
  mix_cmd->add_option("--seed", mix.seed, "top-level seed");
  mix_cmd->add_option("--budget", mix.budget, "T-count budget (exhaustive oracle)");
  mix_cmd->add_option("--r", mix.r, "extrapolation factor");
  mix_cmd->add_option("--mu-tol", mix.mu_tol, "termination threshold (default 1e-4 eps^2)");
  mix_cmd->add_option("--max-iter", mix.max_iter, "iteration cap");
  mix_cmd->add_flag("--polish", mix.polish, "operator-norm polish of the inner QP solution");
  mix_cmd->add_option("--out-ensemble", mix.out_ensemble, "ensemble JSON path");
  mix_cmd->add_option("--out-trace", mix.out_trace, "trace JSONL path");
  mix_cmd->add_option("--out-report", mix.out_report, "lemma report JSON path");

  AxialArgs ax;
  double theta_opt = 0.0;
  CLI::App* ax_cmd = app.add_subcommand("axial", "build the four-unitary axial ensemble");
  CLI::Option* theta_flag = ax_cmd->add_option("--theta", theta_opt, "target angle: Rz(theta)");
  ax_cmd->add_option("--target", ax.target, "axial target (rotation spec or matrix JSON path)");
  ax_cmd->add_option("--eps", ax.eps, "synthesis precision")->required();
  ax_cmd->add_option("--oracle", ax.oracle, "synthetic | exhaustive");
  ax_cmd->add_option("--seed", ax.seed, "top-level seed");
  ax_cmd->add_option("--budget", ax.budget, "T-count budget (exhaustive oracle)");
  ax_cmd->add_option("--out-ensemble", ax.out_ensemble, "ensemble JSON path");
  ax_cmd->add_option("--out-report", ax.out_report, "lemma report JSON path");

  CertifyArgs cert;
  CLI::App* cert_cmd = app.add_subcommand("certify", "certify an ensemble's diamond distance");
  cert_cmd->add_option("--ensemble", cert.ensemble_path, "ensemble JSON path")->required();
  cert_cmd->add_option("--tol", cert.tol, "SDP residual target (>= 1e-7)");
  cert_cmd->add_option("--out", cert.out, "certificate JSON path");

  SavingsArgs sav;
  CLI::App* sav_cmd = app.add_subcommand("savings", "tabulate dilution cost savings");
  sav_cmd->add_option("--alpha", sav.alpha, "bound constant (5 or 10)");
  sav_cmd->add_option("--eps-min", sav.eps_min, "smallest eps");
  sav_cmd->add_option("--eps-max", sav.eps_max, "largest eps");
  sav_cmd->add_option("--points", sav.points, "grid size");
  sav_cmd->add_option("--model", sav.model, "rs | axial-worst | axial-average");
  sav_cmd->add_option("--out", sav.out, "CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return exit_code_for(ErrorCode::ConfigError);
  }

  try {
    if (mix_cmd->parsed()) return cmd_mix(mix);
    if (ax_cmd->parsed()) {
      if (theta_flag->count() > 0) ax.theta = theta_opt;
      return cmd_axial(ax);
    }
    if (cert_cmd->parsed()) return cmd_certify(cert);
    if (sav_cmd->parsed()) return cmd_savings(sav);
  } catch (const MixSynthError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
