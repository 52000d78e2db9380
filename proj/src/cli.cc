// Copyright 2026 The sqcqp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sqcqp/cli.h"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sqcqp/dual.h"
#include "sqcqp/errors.h"
#include "sqcqp/gis.h"
#include "sqcqp/kkt.h"
#include "sqcqp/oracle.h"
#include "sqcqp/problem_io.h"
#include "sqcqp/slemma.h"

namespace sqcqp::cli {
namespace {

using OJson = nlohmann::ordered_json;

// Thrown for problems the command line itself can detect.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FileError : std::runtime_error {
  FileError(const std::string& message, int exit_code)
      : std::runtime_error(message), exit_code(exit_code) {}
  int exit_code;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path, kExitNoInput);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw FileError("cannot read " + path, kExitNoInput);
  return buf.str();
}

Vector ParseCsvVector(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos) {
        throw std::invalid_argument(item);
      }
      values.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(flag + ": cannot parse '" + item + "' as a number");
    }
  }
  if (values.empty()) throw UsageError(flag + " is empty");
  return Eigen::Map<const Vector>(values.data(), static_cast<int>(values.size()));
}

const Problem& RequireScalar(const ProblemFile& file, const std::string& cmd) {
  if (file.matrix_mode()) {
    throw Error(ErrorCode::kValidation,
                cmd + " needs a scalar problem; matrix-mode files are only "
                      "accepted by certify");
  }
  return std::get<Problem>(file.problem);
}

OJson ReportToJson(const CheckReport& r) {
  OJson j;
  j["verdict"] = std::string(VerdictName(r.verdict));
  j["stationarity_residual"] = r.stationarity_residual;
  j["complementarity_residual"] = r.complementarity_residual;
  j["feasibility_residual"] = r.feasibility_residual;
  j["curvature_margin"] = r.curvature_margin;
  j["slater_point"] = r.slater_point ? VectorToJson(*r.slater_point) : OJson();
  j["note"] = r.note;
  return j;
}

OJson CertificateToJson(const Certificate& c, const CheckReport& r) {
  OJson j;
  j["verdict"] = std::string(VerdictName(c.verdict));
  j["point"] = VectorToJson(c.point);
  j["gamma"] = VectorToJson(c.multipliers.gamma);
  if (c.multipliers.gamma0) j["gamma0"] = *c.multipliers.gamma0;
  j["stationarity_residual"] = c.stationarity_residual;
  j["complementarity_residual"] = c.complementarity_residual;
  j["feasibility_residual"] = c.feasibility_residual;
  j["aggregated_curvature"] = c.aggregated_curvature;
  OJson tol;
  tol["stationarity"] = c.tolerances.stationarity;
  tol["complementarity"] = c.tolerances.complementarity;
  tol["feasibility"] = c.tolerances.feasibility;
  tol["curvature"] = c.tolerances.curvature;
  j["tolerances"] = tol;
  j["slater_point"] = r.slater_point ? VectorToJson(*r.slater_point) : OJson();
  j["note"] = r.note;
  return j;
}

int CmdSolve(const ProblemFile& file, const SolveConfig& cfg,
             std::ostream& out) {
  const Problem& p = RequireScalar(file, "solve");
  const SolveResult r = Solve(p, cfg);
  OJson j;
  j["status"] = std::string(SolveStatusName(r.status));
  j["value"] = r.value;
  j["x"] = VectorToJson(r.x);
  j["gamma"] = VectorToJson(r.multipliers.gamma);
  j["dual_value"] = r.dual_value;
  j["dual_status"] = std::string(DualStatusName(r.dual_status));
  j["duality_gap"] = r.duality_gap;
  if (r.status != SolveStatus::kDualDivergence) {
    j["certificate"] = CertificateToJson(r.certificate, r.report);
  }
  j["message"] = r.message;
  out << DumpJson(j) << "\n";
  switch (r.status) {
    case SolveStatus::kDualDivergence:
      return kExitDualDivergence;
    case SolveStatus::kNoConvergence:
      return kExitNoConvergence;
    case SolveStatus::kCertified:
      return r.certificate.verdict == Verdict::kGloballyOptimal
                 ? kExitOk
                 : kExitConditional;
  }
  return kExitNoConvergence;
}

int CmdCertify(const ProblemFile& file, const Tolerances& tol,
               const SlaterOptions& slater, std::ostream& out) {
  if (!file.candidate) {
    throw Error(ErrorCode::kValidation, "certify needs a candidate block");
  }
  const CandidateBlock& cand = *file.candidate;
  CheckReport report;
  if (file.matrix_mode()) {
    report = CheckKktGeneral(std::get<GeneralProblem>(file.problem), cand.x,
                             cand.multipliers, tol, slater);
  } else if (cand.multipliers.gamma0) {
    report = CheckFritzJohn(std::get<Problem>(file.problem), cand.x,
                            cand.multipliers, tol, slater);
  } else {
    report = CheckKkt(std::get<Problem>(file.problem), cand.x, cand.multipliers,
                      tol, slater);
  }
  out << DumpJson(ReportToJson(report)) << "\n";
  return report.verdict == Verdict::kGloballyOptimal ? kExitOk : kExitRejected;
}

int CmdWitness(const ProblemFile& file, const std::string& xv,
               const std::string& xw, double lambda, std::ostream& out) {
  const Problem& p = RequireScalar(file, "witness");
  const auto fs = AllFunctionals(p);
  const WitnessResult w = ConvexityWitness(fs, ParseCsvVector(xv, "--xv"),
                                           ParseCsvVector(xw, "--xw"), lambda);
  OJson j;
  j["x_tilde"] = VectorToJson(w.x_tilde);
  j["alpha_roots"] = OJson::array({w.alpha_roots.first, w.alpha_roots.second});
  j["chosen_alpha"] = w.chosen_alpha;
  j["discriminant"] = w.discriminant;
  j["kernel_vector"] = VectorToJson(w.kernel_vector);
  j["slacks"] = OJson(w.slacks);
  j["rank"] = w.rank;
  out << DumpJson(j) << "\n";
  return kExitOk;
}

int CmdSlemma(const ProblemFile& file, const std::optional<double>& optimum,
              const SearchConfig& cfg, std::ostream& out) {
  const Problem& p = RequireScalar(file, "slemma");
  std::vector<ScalarQuadratic> fs;
  if (optimum) fs.push_back(ShiftObjective(p, *optimum));
  for (const auto& f : p.constraints()) fs.push_back(f);
  const AlternativeVerdict v = Alternative(fs, cfg);
  OJson j;
  j["outcome"] = std::string(AlternativeOutcomeName(v.outcome));
  j["strict_point"] = v.strict_point ? VectorToJson(*v.strict_point) : OJson();
  j["multiplier"] = v.multiplier ? VectorToJson(*v.multiplier) : OJson();
  j["best_max_value"] = v.best_max_value;
  j["best_margin"] = v.best_margin;
  j["rank"] = v.rank;
  j["rank_condition"] = v.rank_condition;
  OJson budget;
  budget["strict_evaluations"] = v.strict_evaluations;
  budget["multiplier_evaluations"] = v.multiplier_evaluations;
  j["budget_used"] = budget;
  out << DumpJson(j) << "\n";
  return kExitOk;
}

int CmdSample(const ProblemFile& file, const SampleConfig& cfg,
              const std::string& path, std::ostream& out) {
  const Problem& p = RequireScalar(file, "sample");
  const auto fs = AllFunctionals(p);
  const std::vector<Vector> cloud = SampleImage(fs, cfg);
  std::ofstream csv(path, std::ios::binary);
  if (!csv) {
    throw FileError("cannot create " + path, kExitCantCreate);
  }
  for (size_t k = 0; k < fs.size(); ++k) {
    csv << (k == 0 ? "" : ",") << "f" << k;
  }
  csv << "\n";
  for (const Vector& row : cloud) {
    for (int k = 0; k < row.size(); ++k) {
      csv << (k == 0 ? "" : ",") << FormatDouble(row[k]);
    }
    csv << "\n";
  }
  csv.close();
  if (!csv) throw FileError("cannot write " + path, kExitCantCreate);
  OJson j;
  j["rows"] = cloud.size();
  j["columns"] = fs.size();
  j["path"] = path;
  out << DumpJson(j) << "\n";
  return kExitOk;
}

int CmdOracle(const ProblemFile& file, double box, int points,
              std::ostream& out) {
  const Problem& p = RequireScalar(file, "oracle");
  const GridMinimum g = GridMinimize(p, GridSpec::Cube(p.n(), box, points));
  OJson j;
  j["status"] = g.feasible ? "Feasible" : "Infeasible";
  if (g.feasible) {
    j["value"] = g.value;
    j["x"] = VectorToJson(g.x);
    j["grid_value"] = g.grid_value;
    j["grid_x"] = VectorToJson(g.grid_x);
  }
  out << DumpJson(j) << "\n";
  return g.feasible ? kExitOk : kExitRejected;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Global solver and certificate checker for scalar QCQPs"};
  app.name("sqcqp");
  app.require_subcommand(1);

  std::string file;
  uint64_t seed = 0;

  SolveConfig solve_cfg;
  auto* solve = app.add_subcommand("solve", "Solve via the Lagrangian dual and certify");
  solve->add_option("file", file, "Problem JSON file")->required();
  solve->add_option("--gap", solve_cfg.gap_tolerance, "Duality gap tolerance");
  solve->add_option("--restarts", solve_cfg.restarts, "Ascent restarts");
  solve->add_option("--seed", seed, "Random seed");

  double certify_tol = -1.0;
  auto* certify = app.add_subcommand("certify", "Check the candidate block");
  certify->add_option("file", file, "Problem JSON file")->required();
  certify->add_option("--tol", certify_tol, "Residual tolerance");
  certify->add_option("--seed", seed, "Seed for the Slater point search");

  std::string xv;
  std::string xw;
  double lambda = 0.5;
  auto* witness = app.add_subcommand("witness", "Construct a convexity witness");
  witness->add_option("file", file, "Problem JSON file")->required();
  witness->add_option("--xv", xv, "First point, comma separated")->required();
  witness->add_option("--xw", xw, "Second point, comma separated")->required();
  witness->add_option("--lambda", lambda, "Convex weight in (0, 1)")->required();

  std::optional<double> optimum;
  auto* slemma = app.add_subcommand("slemma", "Strict point or nonnegative combination");
  slemma->add_option("file", file, "Problem JSON file")->required();
  slemma->add_option("--include-objective", optimum,
                     "Prepend J - J* using this optimal value");
  slemma->add_option("--seed", seed, "Random seed");

  SampleConfig sample_cfg;
  std::string out_path;
  auto* sample = app.add_subcommand("sample", "Sample the generalized image set");
  sample->add_option("file", file, "Problem JSON file")->required();
  sample->add_option("--count", sample_cfg.count, "Number of samples")->required();
  sample->add_option("--box", sample_cfg.box, "Half-width of the sampling box")->required();
  sample->add_option("--shift", sample_cfg.shift, "Largest orthant jitter");
  sample->add_option("--seed", seed, "Random seed");
  sample->add_option("--out", out_path, "Output CSV path")->required();

  double oracle_box = 1.0;
  int oracle_points = 101;
  auto* oracle = app.add_subcommand("oracle", "Brute-force grid minimum");
  oracle->add_option("file", file, "Problem JSON file")->required();
  oracle->add_option("--box", oracle_box, "Half-width of the grid box")->required();
  oracle->add_option("--points", oracle_points, "Grid points per axis")->required();

  std::vector<std::string> argv_storage;
  argv_storage.push_back("sqcqp");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    const ProblemFile problem = ParseProblem(ReadFile(file));
    if (*solve) {
      solve_cfg.seed = seed;
      solve_cfg.search.seed = seed;
      return CmdSolve(problem, solve_cfg, out);
    }
    if (*certify) {
      Tolerances tol;
      if (certify_tol >= 0.0) {
        tol.stationarity = tol.complementarity = tol.feasibility = certify_tol;
      }
      SlaterOptions slater;
      slater.search_config.seed = seed;
      return CmdCertify(problem, tol, slater, out);
    }
    if (*witness) return CmdWitness(problem, xv, xw, lambda, out);
    if (*slemma) {
      SearchConfig cfg;
      cfg.seed = seed;
      return CmdSlemma(problem, optimum, cfg, out);
    }
    if (*sample) {
      sample_cfg.seed = seed;
      return CmdSample(problem, sample_cfg, out_path, out);
    }
    if (*oracle) return CmdOracle(problem, oracle_box, oracle_points, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FileError& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kFullRank:
        return kExitFullRank;
      case ErrorCode::kParse:
      case ErrorCode::kValidation:
      case ErrorCode::kDimension:
      case ErrorCode::kNonFiniteEntry:
        return kExitDataError;
      default:
        return kExitRejected;
    }
  }
  return kExitUsage;
}

}  // namespace sqcqp::cli
