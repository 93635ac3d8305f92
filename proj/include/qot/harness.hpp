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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qot/channel.hpp"
#include "qot/qubit.hpp"
#include "qot/transport.hpp"

namespace qot {

// Monte Carlo monotonicity harness: draw state pairs and channels, compare
// the transport cost before and after the channel, stream per-sample records
// and aggregate a summary. Sampling is keyed on (seed, sample_id) only, so
// the record stream is byte-identical for any worker count.

enum class ChannelFamily { choi_rank_k, extremal, mixed_unitary };

inline const char* family_tag(ChannelFamily f) {
  switch (f) {
    case ChannelFamily::choi_rank_k:
      return "choi-rank-k";
    case ChannelFamily::extremal:
      return "extremal";
    default:
      return "mixed-unitary";
  }
}

inline std::optional<ChannelFamily> family_from_tag(const std::string& tag) {
  if (tag == "choi-rank-k") return ChannelFamily::choi_rank_k;
  if (tag == "extremal") return ChannelFamily::extremal;
  if (tag == "mixed-unitary") return ChannelFamily::mixed_unitary;
  return std::nullopt;
}

struct CampaignSpec {
  int n = 2;
  ChannelFamily family = ChannelFamily::extremal;
  std::optional<int> rank_k;  // required iff family == choi_rank_k
  long samples = 0;
  int state_rank = 0;  // 0 means full rank
  std::uint64_t seed = 0;
  int workers = 1;
  int terms = 3;  // unitary components for mixed-unitary channels
  double violation_tol = tolerances().violation_tol;
  SolverOptions solver;
};

struct ExperimentRecord {
  long sample_id = 0;
  int n = 0;
  ChannelFamily family = ChannelFamily::extremal;
  std::optional<int> rank_k;
  double t_before = 0.0;
  double t_after = 0.0;
  double delta = 0.0;  // t_before - t_after
  double gap_before = 0.0;
  double gap_after = 0.0;
  double marginal_before = 0.0;
  double marginal_after = 0.0;
  bool converged = false;
  std::string channel_descriptor;
};

// Full reproduction data for a sample that violated monotonicity.
struct ViolationInstance {
  ExperimentRecord record;
  DensityMatrix rho_a;
  DensityMatrix rho_b;
  QuantumChannel channel;
};

struct CampaignSummary {
  long samples = 0;
  long violations = 0;
  long exclusions = 0;  // non-converged records, excluded from the stats
  double min_delta = 0.0;
  double max_delta = 0.0;
  double mean_delta = 0.0;
  double max_gap = 0.0;       // worst certified solver gap across both solves
  double max_marginal = 0.0;  // worst coupling marginal residual
  double tol = 0.0;
  // provenance
  int n = 0;
  ChannelFamily family = ChannelFamily::extremal;
  std::optional<int> rank_k;
  int state_rank = 0;
  std::uint64_t seed = 0;
  int workers = 0;
  int terms = 0;
};

struct CampaignResult {
  std::vector<ExperimentRecord> records;
  std::vector<ViolationInstance> violations;
  CampaignSummary summary;
};

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline QuantumChannel draw_channel(const CampaignSpec& spec, RngStream& rng,
                                   std::string* descriptor) {
  std::ostringstream d;
  switch (spec.family) {
    case ChannelFamily::choi_rank_k: {
      QuantumChannel ch = random_channel_choi(spec.n, *spec.rank_k, rng);
      d << "choi-rank-k k=" << *spec.rank_k;
      *descriptor = d.str();
      return ch;
    }
    case ChannelFamily::extremal: {
      QuantumChannel ch = sample_extremal_channel(spec.n, rng);
      d << "extremal n=" << spec.n;
      *descriptor = d.str();
      return ch;
    }
    default: {
      QuantumChannel ch = mixed_unitary_channel(spec.n, spec.terms, rng);
      d << "mixed-unitary terms=" << spec.terms;
      *descriptor = d.str();
      return ch;
    }
  }
}

inline void validate_spec(const CampaignSpec& spec) {
  if (spec.n < 2 || spec.n > spec.solver.dim_cap)
    throw DimensionError("campaign dimension out of range");
  if (spec.samples < 1) throw DimensionError("campaign needs at least one sample");
  if (spec.workers < 1) throw DimensionError("campaign needs at least one worker");
  const bool choi = spec.family == ChannelFamily::choi_rank_k;
  if (choi != spec.rank_k.has_value())
    throw DimensionError("rank_k must be given exactly for the choi-rank-k family");
  if (choi && (*spec.rank_k < 1 || *spec.rank_k > spec.n * spec.n))
    throw DimensionError("rank_k outside [1, n^2]");
  if (spec.state_rank < 0 || spec.state_rank > spec.n)
    throw DimensionError("state_rank outside [1, n]");
  if (spec.family == ChannelFamily::mixed_unitary && spec.terms < 1)
    throw DimensionError("mixed-unitary needs at least one term");
}

}  // namespace detail

inline std::string campaign_csv_header() {
  return "sample_id,n,family,rank_k,t_before,t_after,delta,gap_before,gap_after";
}

inline std::string campaign_csv_row(const ExperimentRecord& r) {
  std::ostringstream os;
  os << r.sample_id << ',' << r.n << ',' << family_tag(r.family) << ',';
  if (r.rank_k) os << *r.rank_k;
  os << ',' << detail::format_double(r.t_before) << ',' << detail::format_double(r.t_after)
     << ',' << detail::format_double(r.delta) << ',' << detail::format_double(r.gap_before)
     << ',' << detail::format_double(r.gap_after);
  return os.str();
}

// Runs one campaign. on_record (optional) is invoked in sample_id order
// while the campaign progresses. Violations carry the full instance so the
// caller can persist a reproduction file.
inline CampaignResult run_campaign(
    const CampaignSpec& spec,
    const std::function<void(const ExperimentRecord&)>& on_record = {}) {
  detail::validate_spec(spec);
  const int state_rank = spec.state_rank == 0 ? spec.n : spec.state_rank;
  const CostMatrix cost = projector_cost(spec.n);

  CampaignResult result;
  result.records.resize(spec.samples);
  std::vector<char> done(spec.samples, 0);
  long emitted = 0;
  std::mutex merge_mutex;
  std::atomic<long> next{0};

  auto run_sample = [&](long id) {
    RngStream rng(spec.seed, static_cast<std::uint64_t>(id));
    ExperimentRecord rec;
    rec.sample_id = id;
    rec.n = spec.n;
    rec.family = spec.family;
    rec.rank_k = spec.rank_k;
    std::optional<ViolationInstance> violation;
    try {
      const DensityMatrix rho_a = random_state(spec.n, state_rank, rng);
      const DensityMatrix rho_b = random_state(spec.n, state_rank, rng);
      const QuantumChannel ch = detail::draw_channel(spec, rng, &rec.channel_descriptor);
      const DensityMatrix out_a = apply(ch, rho_a);
      const DensityMatrix out_b = apply(ch, rho_b);
      const TransportSolution before = solve({rho_a, rho_b, cost}, spec.solver);
      const TransportSolution after = solve({out_a, out_b, cost}, spec.solver);
      rec.t_before = before.value;
      rec.t_after = after.value;
      rec.delta = rec.t_before - rec.t_after;
      rec.gap_before = before.gap;
      rec.gap_after = after.gap;
      rec.marginal_before = before.marginal_residual;
      rec.marginal_after = after.marginal_residual;
      rec.converged =
          before.status == SolveStatus::optimal && after.status == SolveStatus::optimal;
      if (rec.converged && rec.delta < -spec.violation_tol)
        violation = ViolationInstance{rec, rho_a, rho_b, ch};
    } catch (const std::exception& e) {
      rec.converged = false;
      rec.channel_descriptor += std::string(" [error: ") + e.what() + "]";
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    result.records[id] = std::move(rec);
    if (violation) result.violations.push_back(std::move(*violation));
    done[id] = 1;
    while (emitted < spec.samples && done[emitted]) {
      if (on_record) on_record(result.records[emitted]);
      ++emitted;
    }
  };

  auto worker = [&] {
    for (;;) {
      const long id = next.fetch_add(1);
      if (id >= spec.samples) break;
      run_sample(id);
    }
  };

  if (spec.workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(spec.workers);
    for (int w = 0; w < spec.workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // violations were appended in completion order; restore sample order
  std::sort(result.violations.begin(), result.violations.end(),
            [](const ViolationInstance& a, const ViolationInstance& b) {
              return a.record.sample_id < b.record.sample_id;
            });

  CampaignSummary& s = result.summary;
  s.samples = spec.samples;
  s.tol = spec.violation_tol;
  s.n = spec.n;
  s.family = spec.family;
  s.rank_k = spec.rank_k;
  s.state_rank = state_rank;
  s.seed = spec.seed;
  s.workers = spec.workers;
  s.terms = spec.family == ChannelFamily::mixed_unitary ? spec.terms : 0;
  bool first = true;
  double sum = 0.0;
  for (const ExperimentRecord& r : result.records) {
    if (!r.converged) {
      ++s.exclusions;
      continue;
    }
    if (first) {
      s.min_delta = s.max_delta = r.delta;
      first = false;
    } else {
      s.min_delta = std::min(s.min_delta, r.delta);
      s.max_delta = std::max(s.max_delta, r.delta);
    }
    sum += r.delta;
    s.max_gap = std::max({s.max_gap, std::abs(r.gap_before), std::abs(r.gap_after)});
    s.max_marginal = std::max({s.max_marginal, r.marginal_before, r.marginal_after});
    if (r.delta < -spec.violation_tol) ++s.violations;
  }
  const long counted = s.samples - s.exclusions;
  s.mean_delta = counted > 0 ? sum / counted : 0.0;
  return result;
}

inline CampaignResult mixed_unitary_campaign(int n, int terms, long samples,
                                             std::uint64_t seed, int workers = 1) {
  CampaignSpec spec;
  spec.n = n;
  spec.family = ChannelFamily::mixed_unitary;
  spec.terms = terms;
  spec.samples = samples;
  spec.seed = seed;
  spec.workers = workers;
  return run_campaign(spec);
}

// ---------------------------------------------------------------------------
// Fixture: transport cost increasing under a unitary when the cost operator
// is built from a line geometry on three sites, and staying invariant for
// the projector cost on the same pair.

struct CounterexampleReport {
  double direct_before = 0.0;  // unique coupling rho_a (x) rho_b
  double direct_after = 0.0;
  double sdp_before = 0.0;
  double sdp_after = 0.0;
  double projector_before = 0.0;
  double projector_after = 0.0;
  double gap_before = 0.0;
  double gap_after = 0.0;
  double cost_conjugation_defect = 0.0;  // ||(U(x)U) C (U(x)U)' - C||_F
  double expected_before = 0.05;
  double expected_after = 0.10;
  double tol = 1e-9;
  bool pass = false;
};

struct CounterexampleProblem {
  DensityMatrix rho_a;
  DensityMatrix rho_b;
  CostMatrix cost;
  QuantumChannel rotation;
};

inline CounterexampleProblem counterexample_problem() {
  const int n = 3;
  DensityMatrix rho_a = DensityMatrix::pure({cplx(M_SQRT1_2), cplx(M_SQRT1_2), cplx(0.0)});
  const double inv5 = 1.0 / std::sqrt(5.0);
  DensityMatrix rho_b = DensityMatrix::pure({cplx(inv5), cplx(2.0 * inv5), cplx(0.0)});

  const ClassicalCost e(n, {0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 2.0, 1.0, 0.0});
  CostMatrix cost = cost_from_classical(e);

  ComplexMatrix u(n, n);
  u(0, 0) = 1.0;
  u(2, 1) = 1.0;
  u(1, 2) = -1.0;
  return CounterexampleProblem{std::move(rho_a), std::move(rho_b), std::move(cost),
                               unitary_channel(u)};
}

inline CounterexampleReport counterexample_fixture(const SolverOptions& opts = {}) {
  const int n = 3;
  const CounterexampleProblem p = counterexample_problem();
  const DensityMatrix& rho_a = p.rho_a;
  const DensityMatrix& rho_b = p.rho_b;
  const CostMatrix& cost = p.cost;
  const DensityMatrix rot_a = apply(p.rotation, rho_a);
  const DensityMatrix rot_b = apply(p.rotation, rho_b);

  CounterexampleReport rep;
  rep.direct_before = inner(cost.mat, tensor(rho_a.herm(), rho_b.herm()));
  rep.direct_after = inner(cost.mat, tensor(rot_a.herm(), rot_b.herm()));

  const TransportSolution before = solve({rho_a, rho_b, cost}, opts);
  const TransportSolution after = solve({rot_a, rot_b, cost}, opts);
  rep.sdp_before = before.value;
  rep.sdp_after = after.value;
  rep.gap_before = before.gap;
  rep.gap_after = after.gap;

  const CostMatrix proj = projector_cost(n);
  rep.projector_before = solve({rho_a, rho_b, proj}, opts).value;
  rep.projector_after = solve({rot_a, rot_b, proj}, opts).value;

  const ComplexMatrix uu = kron(p.rotation.kraus[0], p.rotation.kraus[0]);
  rep.cost_conjugation_defect =
      (HermitianMatrix(uu * cost.mat.mat() * uu.adjoint()) - cost.mat).frobenius_norm();

  const auto close = [&](double a, double b) { return std::abs(a - b) <= rep.tol; };
  rep.pass = close(rep.direct_before, rep.expected_before) &&
             close(rep.direct_after, rep.expected_after) &&
             close(rep.sdp_before, rep.expected_before) &&
             close(rep.sdp_after, rep.expected_after) &&
             close(rep.projector_before, rep.projector_after) &&
             rep.sdp_after > rep.sdp_before;
  return rep;
}

}  // namespace qot
