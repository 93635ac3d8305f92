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

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "qot/harness.hpp"

using namespace qot;
using Catch::Approx;

namespace {

std::string records_as_csv(const CampaignResult& result) {
  std::ostringstream os;
  os << campaign_csv_header() << '\n';
  for (const ExperimentRecord& r : result.records) os << campaign_csv_row(r) << '\n';
  return os.str();
}

}  // namespace

TEST_CASE("counterexample fixture reproduces the printed values") {
  const CounterexampleReport rep = counterexample_fixture();
  CHECK(rep.pass);
  CHECK(rep.direct_before == Approx(0.05).margin(1e-12));
  CHECK(rep.direct_after == Approx(0.10).margin(1e-12));
  CHECK(rep.sdp_before == Approx(0.05).margin(1e-9));
  CHECK(rep.sdp_after == Approx(0.10).margin(1e-9));
  CHECK(std::abs(rep.projector_before - rep.projector_after) <= 1e-9);
  CHECK(rep.cost_conjugation_defect == Approx(std::sqrt(2.0)).margin(1e-12));
  CHECK(std::abs(rep.gap_before) <= 1e-7);
  CHECK(std::abs(rep.gap_after) <= 1e-7);
}

TEST_CASE("campaign spec validation") {
  CampaignSpec spec;
  spec.samples = 1;
  spec.seed = 1;
  spec.family = ChannelFamily::choi_rank_k;
  CHECK_THROWS_AS(run_campaign(spec), DimensionError);  // missing rank_k
  spec.rank_k = 9;
  CHECK_THROWS_AS(run_campaign(spec), DimensionError);  // exceeds n^2 for n=2
  spec.rank_k = 2;
  CHECK_NOTHROW(run_campaign(spec));
  spec.family = ChannelFamily::extremal;
  CHECK_THROWS_AS(run_campaign(spec), DimensionError);  // rank_k must be absent
  spec.rank_k.reset();
  spec.samples = 0;
  CHECK_THROWS_AS(run_campaign(spec), DimensionError);
}

TEST_CASE("extremal qubit campaign holds monotonicity") {
  CampaignSpec spec;
  spec.n = 2;
  spec.family = ChannelFamily::extremal;
  spec.samples = 25;
  spec.seed = 7;
  const CampaignResult result = run_campaign(spec);
  REQUIRE(result.records.size() == 25);
  CHECK(result.summary.exclusions == 0);
  CHECK(result.summary.violations == 0);
  CHECK(result.violations.empty());
  CHECK(result.summary.min_delta >= -1e-7);
  CHECK(result.summary.max_gap <= 1e-7);
  CHECK(result.summary.mean_delta >= result.summary.min_delta);
  CHECK(result.summary.mean_delta <= result.summary.max_delta);
  for (long i = 0; i < 25; ++i) {
    const ExperimentRecord& r = result.records[i];
    CHECK(r.sample_id == i);
    CHECK(r.converged);
    CHECK(r.delta == r.t_before - r.t_after);
    CHECK(r.t_before >= 0.0);
    CHECK(r.t_after >= 0.0);
    CHECK_FALSE(r.channel_descriptor.empty());
  }
}

TEST_CASE("unitary channels leave the cost unchanged within solver noise") {
  CampaignSpec spec;
  spec.n = 2;
  spec.family = ChannelFamily::choi_rank_k;
  spec.rank_k = 1;
  spec.samples = 10;
  spec.seed = 11;
  const CampaignResult result = run_campaign(spec);
  CHECK(result.summary.exclusions == 0);
  for (const ExperimentRecord& r : result.records) CHECK(std::abs(r.delta) <= 2e-9);
}

TEST_CASE("record stream is ordered and bitwise stable across worker counts") {
  CampaignSpec spec;
  spec.n = 2;
  spec.family = ChannelFamily::choi_rank_k;
  spec.rank_k = 3;
  spec.samples = 16;
  spec.seed = 13;

  std::vector<long> seen;
  const CampaignResult serial = run_campaign(spec, [&](const ExperimentRecord& r) {
    seen.push_back(r.sample_id);
  });
  REQUIRE(seen.size() == 16);
  for (long i = 0; i < 16; ++i) CHECK(seen[i] == i);

  spec.workers = 3;
  std::vector<long> seen_parallel;
  const CampaignResult parallel = run_campaign(spec, [&](const ExperimentRecord& r) {
    seen_parallel.push_back(r.sample_id);
  });
  for (long i = 0; i < 16; ++i) CHECK(seen_parallel[i] == i);

  CHECK(records_as_csv(serial) == records_as_csv(parallel));
  CHECK(serial.summary.min_delta == parallel.summary.min_delta);
}

TEST_CASE("mixed unitary campaigns") {
  // a single term is a plain unitary: the cost must be invariant
  const CampaignResult single = mixed_unitary_campaign(2, 1, 10, 17);
  CHECK(single.summary.exclusions == 0);
  for (const ExperimentRecord& r : single.records) CHECK(std::abs(r.delta) <= 2e-9);

  const CampaignResult mixed = mixed_unitary_campaign(2, 3, 15, 19);
  CHECK(mixed.summary.violations == 0);
  CHECK(mixed.summary.min_delta >= -1e-7);
}

TEST_CASE("qutrit extremal campaign keeps positive deltas") {
  CampaignSpec spec;
  spec.n = 3;
  spec.family = ChannelFamily::extremal;
  spec.samples = 10;
  spec.seed = 23;
  const CampaignResult result = run_campaign(spec);
  CHECK(result.summary.exclusions == 0);
  CHECK(result.summary.violations == 0);
  CHECK(result.summary.min_delta > 0.0);
}

TEST_CASE("a hostile tolerance reports violations with full instances") {
  CampaignSpec spec;
  spec.n = 2;
  spec.family = ChannelFamily::extremal;
  spec.samples = 8;
  spec.seed = 29;
  spec.violation_tol = -1.0;  // every finite delta < 1 is flagged
  const CampaignResult result = run_campaign(spec);
  CHECK(result.summary.violations > 0);
  REQUIRE(!result.violations.empty());
  const ViolationInstance& v = result.violations.front();
  CHECK(v.rho_a.dim() == 2);
  CHECK(v.channel.dim_in == 2);
  CHECK(v.record.converged);
  // sorted by sample id
  for (size_t i = 1; i < result.violations.size(); ++i)
    CHECK(result.violations[i - 1].record.sample_id < result.violations[i].record.sample_id);
}

TEST_CASE("csv rows carry full precision and the documented columns") {
  CHECK(campaign_csv_header() ==
        "sample_id,n,family,rank_k,t_before,t_after,delta,gap_before,gap_after");
  ExperimentRecord r;
  r.sample_id = 3;
  r.n = 2;
  r.family = ChannelFamily::extremal;
  r.t_before = 1.0 / 3.0;
  r.t_after = 0.25;
  r.delta = r.t_before - r.t_after;
  r.gap_before = 1e-11;
  r.gap_after = 2e-11;
  const std::string row = campaign_csv_row(r);
  CHECK(row.find("3,2,extremal,,") == 0);  // empty rank_k column
  CHECK(row.find("0.33333333333333331") != std::string::npos);
  r.rank_k = 4;
  CHECK(campaign_csv_row(r).find("3,2,extremal,4,") == 0);
}

TEST_CASE("state rank option produces reduced-rank inputs") {
  CampaignSpec spec;
  spec.n = 3;
  spec.family = ChannelFamily::extremal;
  spec.samples = 4;
  spec.seed = 31;
  spec.state_rank = 1;
  const CampaignResult result = run_campaign(spec);
  CHECK(result.summary.exclusions == 0);
  CHECK(result.summary.state_rank == 1);
}
