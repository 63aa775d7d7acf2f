#pragma once

// JSON forms of matrices, cell points, trajectories and link samples.
//
//   matrix:     {"n": 3, "entries": [["1","2","1/2"], ...]}
//   cell point: matrix fields plus "cell": "2,1,3", "tnn": true
//   trajectory: one JSON object per line {"t", "str", "entries"} (floats)

#include <nlohmann/json.hpp>

#include <ostream>
#include <string>

#include "tnn/coxeter.hpp"
#include "tnn/error.hpp"
#include "tnn/flow.hpp"
#include "tnn/matrix.hpp"
#include "tnn/rational.hpp"
#include "tnn/tnn.hpp"

namespace tnn {

using json = nlohmann::ordered_json;

inline json matrix_to_json(const RatMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.n(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"n", m.n()}, {"entries", std::move(rows)}};
}

inline json matrix_to_json(const FloatMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.n(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"n", m.n()}, {"entries", std::move(rows)}};
}

/// Entries may be strings ("p/q", "p") or JSON integers.
inline RatMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    throw Error(Errc::Parse, "matrix JSON needs \"n\" and \"entries\"");
  if (!j["n"].is_number_integer()) throw Error(Errc::Parse, "\"n\" must be an integer");
  const int n = j["n"].get<int>();
  const auto& rows = j["entries"];
  if (n < 1 || !rows.is_array() || static_cast<int>(rows.size()) != n)
    throw Error(Errc::Parse, "\"entries\" must have n rows");
  RatMatrix m(n);
  for (int r = 0; r < n; ++r) {
    const auto& row = rows[r];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw Error(Errc::Parse, "row " + std::to_string(r) + " must have n entries");
    for (int c = 0; c < n; ++c) {
      const auto& e = row[c];
      if (e.is_string()) m(r, c) = parse_rat(e.get<std::string>());
      else if (e.is_number_integer()) m(r, c) = Rat(e.get<long>());
      else throw Error(Errc::Parse, "matrix entries must be rational strings or integers");
    }
  }
  return m;
}

inline RatMatrix parse_matrix(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::Parse, e.what());
  }
  return matrix_from_json(j);
}

inline json cell_point_to_json(const CellPoint& p) {
  json j = matrix_to_json(p.matrix);
  j["cell"] = p.cell.to_string();
  j["tnn"] = p.tnn;
  return j;
}

inline CellPoint cell_point_from_json(const json& j) {
  CellPoint p{matrix_from_json(j), Permutation::identity(1), false};
  if (!j.contains("cell") || !j["cell"].is_string() || !j.contains("tnn") || !j["tnn"].is_boolean())
    throw Error(Errc::Parse, "cell point JSON needs \"cell\" and \"tnn\"");
  p.cell = Permutation::parse(j["cell"].get<std::string>());
  p.tnn = j["tnn"].get<bool>();
  return p;
}

inline json flow_state_to_json(const FlowState& s) {
  json entries = json::array();
  for (int i = 0; i < s.point.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < s.point.n(); ++j) row.push_back(s.point(i, j));
    entries.push_back(std::move(row));
  }
  return json{{"t", s.time}, {"str", s.str_value}, {"entries", std::move(entries)}};
}

inline void write_trajectory_jsonl(std::ostream& os, const Trajectory& traj) {
  for (const auto& s : traj.states) os << flow_state_to_json(s).dump() << '\n';
}

inline json link_sample_to_json(const LinkSample& s) {
  json strata = json::array();
  for (const auto& st : s.strata)
    strata.push_back({{"w", st.w.to_string()}, {"dimension", st.dimension}, {"count", st.count}});
  json points = json::array();
  for (const auto& p : s.points) {
    json j = matrix_to_json(p.point);
    j["stratum"] = p.stratum.to_string();
    j["str"] = str(p.point);
    points.push_back(std::move(j));
  }
  return json{{"u", s.u.to_string()},
              {"v", s.v.to_string()},
              {"epsilon", to_string(s.epsilon)},
              {"base", matrix_to_json(s.base)},
              {"strata", std::move(strata)},
              {"euler_characteristic", s.euler_characteristic()},
              {"points", std::move(points)}};
}

}  // namespace tnn
