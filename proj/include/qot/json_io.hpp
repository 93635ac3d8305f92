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

#include <fstream>
#include <string>

#include <json.hpp>

#include "qot/harness.hpp"

// JSON serialization for states, channels, cost specifications, solver
// results and campaign artifacts. Complex numbers are two-element arrays
// [re, im]; matrices are nested row arrays.

namespace qot {

using json = nlohmann::json;

inline json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw DimensionError("matrix JSON must be a non-empty array");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      throw DimensionError("matrix JSON rows must have equal length");
    for (int c = 0; c < cols; ++c) {
      const json& e = j[i][c];
      if (e.is_number()) {
        m(i, c) = cplx(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2) {
        m(i, c) = cplx(e[0].get<double>(), e[1].get<double>());
      } else {
        throw DimensionError("matrix entry must be a number or [re, im]");
      }
    }
  }
  return m;
}

inline json state_to_json(const DensityMatrix& rho) {
  return json{{"dim", rho.dim()}, {"matrix", matrix_to_json(rho.mat())}};
}

inline DensityMatrix state_from_json(const json& j) {
  const int dim = j.at("dim").get<int>();
  ComplexMatrix m = matrix_from_json(j.at("matrix"));
  if (m.rows() != dim || m.cols() != dim) throw DimensionError("state matrix shape != dim");
  return DensityMatrix(HermitianMatrix(m));
}

inline json channel_to_json(const QuantumChannel& ch) {
  json kraus = json::array();
  for (const ComplexMatrix& k : ch.kraus) kraus.push_back(matrix_to_json(k));
  return json{{"dim_in", ch.dim_in}, {"dim_out", ch.dim_out}, {"kraus", std::move(kraus)}};
}

inline QuantumChannel channel_from_json(const json& j) {
  const int dim_in = j.at("dim_in").get<int>();
  const int dim_out = j.at("dim_out").get<int>();
  if (dim_in != dim_out) throw DimensionError("only square channels are supported");
  if (j.contains("kraus")) {
    std::vector<ComplexMatrix> kraus;
    for (const json& k : j.at("kraus")) {
      ComplexMatrix m = matrix_from_json(k);
      if (m.rows() != dim_out || m.cols() != dim_in)
        throw DimensionError("Kraus operator shape mismatch");
      kraus.push_back(std::move(m));
    }
    return channel_from_kraus(std::move(kraus));
  }
  if (j.contains("choi")) {
    ComplexMatrix m = matrix_from_json(j.at("choi"));
    if (m.rows() != dim_in * dim_out) throw DimensionError("Choi matrix shape mismatch");
    HermitianMatrix h(m);
    const double tr = h.trace();
    if (!(tr > 0.0)) throw DimensionError("Choi matrix must have positive trace");
    // accept either the trace-n Choi operator or its trace-1 normalization
    return channel_from_choi(DensityMatrix(h * (1.0 / tr)), dim_in);
  }
  throw DimensionError("channel JSON needs a 'kraus' or 'choi' field");
}

inline json classical_cost_to_json(const ClassicalCost& e) {
  json rows = json::array();
  for (int i = 0; i < e.n; ++i) {
    json row = json::array();
    for (int j2 = 0; j2 < e.n; ++j2) row.push_back(e.e[static_cast<size_t>(i) * e.n + j2]);
    rows.push_back(std::move(row));
  }
  return json{{"n", e.n}, {"e", std::move(rows)}};
}

inline ClassicalCost classical_cost_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  const json& rows = j.at("e");
  if (static_cast<int>(rows.size()) != n) throw DimensionError("cost row count != n");
  std::vector<double> entries;
  entries.reserve(static_cast<size_t>(n) * n);
  for (const json& row : rows) {
    if (static_cast<int>(row.size()) != n) throw DimensionError("cost column count != n");
    for (const json& v : row) entries.push_back(v.get<double>());
  }
  return ClassicalCost(n, std::move(entries));
}

inline const char* status_tag(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal:
      return "optimal";
    case SolveStatus::max_iter:
      return "max_iter";
    default:
      return "numerical_failure";
  }
}

inline json solution_to_json(const TransportSolution& s, bool include_coupling = true) {
  json j{{"value", s.value},
         {"primal_value", s.primal_value},
         {"dual_value", s.dual_value},
         {"gap", s.gap},
         {"iterations", s.iterations},
         {"status", status_tag(s.status)},
         {"marginal_residual", s.marginal_residual}};
  if (include_coupling) {
    j["coupling"] = matrix_to_json(s.coupling.mat());
    j["dual"] = json{{"a", matrix_to_json(s.dual.a.mat())}, {"b", matrix_to_json(s.dual.b.mat())}};
  }
  return j;
}

// Disclosed sampling conventions for campaign summaries: every random object
// and the measure it is drawn from.
inline std::string sampling_disclosure(const CampaignSpec& spec) {
  std::string s =
      "states: Ginibre XX^dag normalized to unit trace (rank = state_rank); ";
  switch (spec.family) {
    case ChannelFamily::choi_rank_k:
      s += "channel: Choi matrix from rank-k Ginibre, trace-preservation enforced "
           "by the inverse-sqrt marginal correction";
      break;
    case ChannelFamily::extremal:
      s += "channel: extremal family, qubit angles u ~ U[0,2pi), v ~ U[0,pi); "
           "higher-dim diagonal weights uniform on the per-position simplex";
      break;
    default:
      s += "channel: mixed-unitary, Haar unitaries with uniform simplex weights";
      break;
  }
  return s;
}

inline json summary_to_json(const CampaignSummary& s, const std::string& disclosure = {}) {
  json j{{"samples", s.samples},
         {"violations", s.violations},
         {"exclusions", s.exclusions},
         {"min_delta", s.min_delta},
         {"max_delta", s.max_delta},
         {"mean_delta", s.mean_delta},
         {"max_gap", s.max_gap},
         {"max_marginal", s.max_marginal},
         {"tol", s.tol},
         {"n", s.n},
         {"family", family_tag(s.family)},
         {"state_rank", s.state_rank},
         {"seed", s.seed},
         {"workers", s.workers}};
  if (s.rank_k) j["rank_k"] = *s.rank_k;
  if (s.family == ChannelFamily::mixed_unitary) j["terms"] = s.terms;
  if (!disclosure.empty()) j["sampling"] = disclosure;
  return j;
}

inline json record_to_json(const ExperimentRecord& r) {
  json j{{"sample_id", r.sample_id},
         {"n", r.n},
         {"family", family_tag(r.family)},
         {"t_before", r.t_before},
         {"t_after", r.t_after},
         {"delta", r.delta},
         {"gap_before", r.gap_before},
         {"gap_after", r.gap_after},
         {"marginal_before", r.marginal_before},
         {"marginal_after", r.marginal_after},
         {"converged", r.converged},
         {"channel_descriptor", r.channel_descriptor}};
  if (r.rank_k) j["rank_k"] = *r.rank_k;
  return j;
}

// Full reproduction dump for a monotonicity violation.
inline json violation_to_json(const ViolationInstance& v) {
  return json{{"record", record_to_json(v.record)},
              {"rho_a", state_to_json(v.rho_a)},
              {"rho_b", state_to_json(v.rho_b)},
              {"channel", channel_to_json(v.channel)}};
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DimensionError("cannot open file: " + path);
  return json::parse(in);  // parse_error carries the byte position
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw DimensionError("cannot write file: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace qot
