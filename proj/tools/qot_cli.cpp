// Copyright 2026 The qot authors
//
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

// Command-line front end. Exit codes: 0 success, 1 usage/input error,
// 2 numerical failure, 3 property violation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qot/json_io.hpp"

namespace {

using namespace qot;

void print_kv(const char* key, double v) { std::printf("%s = %.17g\n", key, v); }

struct SolverFlags {
  double tol_gap = SolverOptions{}.tol_gap;
  double tol_feas = SolverOptions{}.tol_feas;
  int max_iter = SolverOptions{}.max_iter;

  void attach(CLI::App* cmd) {
    cmd->add_option("--tol-gap", tol_gap, "complementarity gap tolerance");
    cmd->add_option("--tol-feas", tol_feas, "feasibility tolerance");
    cmd->add_option("--max-iter", max_iter, "iteration cap");
  }

  SolverOptions options() const {
    SolverOptions o;
    o.tol_gap = tol_gap;
    o.tol_feas = tol_feas;
    o.max_iter = max_iter;
    return o;
  }
};

int report_solution(const TransportSolution& sol, const std::string& coupling_path) {
  print_kv("value", sol.value);
  print_kv("primal", sol.primal_value);
  print_kv("dual", sol.dual_value);
  print_kv("gap", sol.gap);
  std::printf("iterations = %d\n", sol.iterations);
  std::printf("status = %s\n", status_tag(sol.status));
  print_kv("marginal_residual", sol.marginal_residual);
  if (!coupling_path.empty()) save_json_file(coupling_path, solution_to_json(sol));
  return sol.status == SolveStatus::optimal ? 0 : 2;
}

struct TransportArgs {
  std::string state_a, state_b, cost_path, coupling_path;
  bool projector = false;
  bool squared = false;
  SolverFlags solver;
};

int run_transport(const TransportArgs& a) {
  const DensityMatrix rho_a = state_from_json(load_json_file(a.state_a));
  const DensityMatrix rho_b = state_from_json(load_json_file(a.state_b));
  if (!a.cost_path.empty() && a.projector)
    throw DimensionError("--cost and --projector are mutually exclusive");
  CostMatrix cost = a.cost_path.empty()
                        ? projector_cost(rho_a.dim())
                        : cost_from_classical(classical_cost_from_json(load_json_file(a.cost_path)));
  TransportProblem prob{rho_a, rho_b, std::move(cost),
                        a.squared ? Objective::squared : Objective::linear};
  return report_solution(solve(prob, a.solver.options()), a.coupling_path);
}

struct QubitArgs {
  double s = 0.5, r = 0.5, theta = 0.0;
  SolverFlags solver;
};

int run_qubit(const QubitArgs& a) {
  const double analytic = tq_semianalytic(a.s, a.r, a.theta);
  const DensityMatrix rho_a = BlochState(a.s, 0.0).to_density();
  const DensityMatrix rho_b = BlochState(a.r, a.theta).to_density();
  const TransportSolution sol = solve({rho_a, rho_b, projector_cost(2)}, a.solver.options());
  print_kv("semi_analytic", analytic);
  print_kv("sdp", sol.value);
  print_kv("difference", std::abs(analytic - sol.value));
  print_kv("gap", sol.gap);
  std::printf("status = %s\n", status_tag(sol.status));
  return sol.status == SolveStatus::optimal ? 0 : 2;
}

struct MetricArgs {
  double r = 0.5, v1 = 0.0, v2 = 0.0;
};

int run_metric(const MetricArgs& a) {
  std::printf("%.17g\n", metric_derivative_g(a.r, {a.v1, a.v2}));
  return 0;
}

std::vector<double> parse_grid(const std::string& spec) {
  if (spec.find(':') != std::string::npos) {
    double lo = 0.0, hi = 0.0;
    int points = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &points) != 3 || points < 2 || hi <= lo)
      throw DimensionError("grid must be lo:hi:points with points >= 2 and hi > lo");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1);
    return g;
  }
  std::vector<double> g;
  std::string token;
  std::istringstream in(spec);
  while (std::getline(in, token, ',')) g.push_back(std::stod(token));
  if (g.empty()) throw DimensionError("empty grid");
  return g;
}

struct RiemannArgs {
  double r = 1.0 / 3.0;
  std::string grid = "-3:3:61";
};

int run_riemann(const RiemannArgs& a) {
  const std::vector<RiemannPoint> table = riemann_table(a.r, parse_grid(a.grid));
  std::printf("r,v2,G,h\n");
  for (const RiemannPoint& p : table)
    std::printf("%.17g,%.17g,%.17g,%.17g\n", a.r, p.v2, p.g, p.h);
  return 0;
}

int run_counterexample(const SolverFlags& solver) {
  const CounterexampleReport rep = counterexample_fixture(solver.options());
  print_kv("direct_before", rep.direct_before);
  print_kv("direct_after", rep.direct_after);
  print_kv("sdp_before", rep.sdp_before);
  print_kv("sdp_after", rep.sdp_after);
  print_kv("projector_before", rep.projector_before);
  print_kv("projector_after", rep.projector_after);
  print_kv("cost_conjugation_defect", rep.cost_conjugation_defect);
  print_kv("expected_before", rep.expected_before);
  print_kv("expected_after", rep.expected_after);
  std::printf("pass = %s\n", rep.pass ? "true" : "false");
  return rep.pass ? 0 : 2;
}

struct LemmaArgs {
  long samples = 0;
  std::uint64_t seed = 0;
  double tol = tolerances().psd_check;
};

int run_lemma_f(const LemmaArgs& a) {
  RngStream rng(a.seed, 0);
  const LemmaFScanReport rep = lemma_f_scan(a.samples, rng, a.tol);
  std::printf("samples = %ld\n", rep.samples);
  std::printf("violations = %ld\n", rep.violations);
  print_kv("min_eigenvalue", rep.min_eigenvalue);
  print_kv("tol", rep.tol);
  std::printf("worst: c = %.17g, d = %.17g, x = %.17g, u = %.17g, v = %.17g\n",
              rep.worst_params.c, rep.worst_params.d, rep.worst_params.x, rep.worst_u,
              rep.worst_v);
  return rep.violations > 0 ? 3 : 0;
}

struct CampaignArgs {
  int n = 2;
  std::string family;
  int rank_k = -1;
  long samples = 0;
  std::uint64_t seed = 0;
  std::string out;
  int workers = 1;
  int state_rank = 0;
  int terms = 3;
  double tol = tolerances().violation_tol;
  SolverFlags solver;
};

int run_campaign_cmd(const CampaignArgs& a) {
  CampaignSpec spec;
  spec.n = a.n;
  const auto fam = family_from_tag(a.family);
  if (!fam) throw DimensionError("unknown family: " + a.family);
  spec.family = *fam;
  if (a.rank_k >= 0) spec.rank_k = a.rank_k;
  spec.samples = a.samples;
  spec.seed = a.seed;
  spec.workers = a.workers;
  spec.state_rank = a.state_rank;
  spec.terms = a.terms;
  spec.violation_tol = a.tol;
  spec.solver = a.solver.options();

  std::filesystem::create_directories(a.out);
  const std::filesystem::path dir(a.out);
  std::ofstream csv(dir / "records.csv");
  if (!csv) throw DimensionError("cannot write records.csv under " + a.out);
  csv << campaign_csv_header() << '\n';
  const CampaignResult result = run_campaign(spec, [&](const ExperimentRecord& r) {
    csv << campaign_csv_row(r) << '\n';
    csv.flush();
  });
  csv.close();

  for (const ViolationInstance& v : result.violations) {
    const std::string name = "violation_" + std::to_string(v.record.sample_id) + ".json";
    save_json_file((dir / name).string(), violation_to_json(v));
  }
  const json summary = summary_to_json(result.summary, sampling_disclosure(spec));
  save_json_file((dir / "summary.json").string(), summary);
  std::cout << summary.dump(2) << '\n';

  if (result.summary.violations > 0) return 3;
  if (result.summary.exclusions > 0) return 2;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum optimal transport toolkit"};
  app.require_subcommand(1);
  int rc = 0;

  auto targs = std::make_shared<TransportArgs>();
  CLI::App* t = app.add_subcommand("transport", "transport cost between two state files");
  t->add_option("--state-a", targs->state_a, "state JSON file")->required();
  t->add_option("--state-b", targs->state_b, "state JSON file")->required();
  t->add_option("--cost", targs->cost_path, "classical cost JSON file");
  t->add_flag("--projector", targs->projector, "use the antisymmetric projector cost (default)");
  t->add_flag("--squared", targs->squared, "minimize the squared cost operator");
  t->add_option("--coupling", targs->coupling_path, "write the full solution JSON here");
  targs->solver.attach(t);
  t->callback([targs, &rc] { rc = run_transport(*targs); });

  auto qargs = std::make_shared<QubitArgs>();
  CLI::App* q = app.add_subcommand("qubit", "semi-analytic vs SDP on a qubit pair");
  q->add_option("--s", qargs->s, "first state spectral parameter in [0,1]")->required();
  q->add_option("--r", qargs->r, "second state spectral parameter in [0,1]")->required();
  q->add_option("--theta", qargs->theta, "relative Bloch angle in [0,pi)")->required();
  qargs->solver.attach(q);
  q->callback([qargs, &rc] { rc = run_qubit(*qargs); });

  auto margs = std::make_shared<MetricArgs>();
  CLI::App* mg = app.add_subcommand("metric-g", "metric derivative G(r, v)");
  mg->add_option("--r", margs->r, "Bloch radial parameter in (0,1)")->required();
  mg->add_option("--v1", margs->v1, "radial tangent component")->required();
  mg->add_option("--v2", margs->v2, "angular tangent component")->required();
  mg->callback([margs, &rc] { rc = run_metric(*margs); });

  auto rargs = std::make_shared<RiemannArgs>();
  CLI::App* ri = app.add_subcommand("riemann", "non-Riemannian witness table (CSV to stdout)");
  ri->add_option("--r", rargs->r, "Bloch radial parameter in (0,1)")->required();
  ri->add_option("--grid", rargs->grid, "v2 grid: lo:hi:points or comma-separated values");
  ri->callback([rargs, &rc] { rc = run_riemann(*rargs); });

  auto cx_solver = std::make_shared<SolverFlags>();
  CLI::App* cx = app.add_subcommand("counterexample", "three-site line-cost fixture report");
  cx_solver->attach(cx);
  cx->callback([cx_solver, &rc] { rc = run_counterexample(*cx_solver); });

  auto largs = std::make_shared<LemmaArgs>();
  CLI::App* lf = app.add_subcommand("lemma-f", "positivity transfer scan for diagonal dual pairs");
  lf->add_option("--samples", largs->samples, "number of samples")->required();
  lf->add_option("--seed", largs->seed, "RNG seed")->required();
  lf->add_option("--tol", largs->tol, "eigenvalue floor counted as violation");
  lf->callback([largs, &rc] { rc = run_lemma_f(*largs); });

  auto cargs = std::make_shared<CampaignArgs>();
  CLI::App* ca = app.add_subcommand("campaign", "monotonicity Monte Carlo campaign");
  ca->add_option("--n", cargs->n, "marginal dimension (2..4)")->required();
  ca->add_option("--family", cargs->family, "choi-rank-k | extremal | mixed-unitary")->required();
  ca->add_option("--rank-k", cargs->rank_k, "Choi rank (choi-rank-k family only)");
  ca->add_option("--samples", cargs->samples, "number of samples")->required();
  ca->add_option("--seed", cargs->seed, "RNG seed")->required();
  ca->add_option("--out", cargs->out, "output directory")->required();
  ca->add_option("--workers", cargs->workers, "worker threads");
  ca->add_option("--state-rank", cargs->state_rank, "state rank (default full)");
  ca->add_option("--terms", cargs->terms, "mixed-unitary component count");
  ca->add_option("--tol", cargs->tol, "violation tolerance on delta");
  cargs->solver.attach(ca);
  ca->callback([cargs, &rc] { rc = run_campaign_cmd(*cargs); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "JSON parse error: " << e.what() << '\n';
    return 1;
  } catch (const qot::DimensionError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const qot::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return rc;
}
