#pragma once

// JSON-producing adapters behind the tnn-strata verbs. Parsing of argv and
// files lives in the tool; these take typed inputs and return JSON.

#include <string>
#include <vector>

#include "tnn/coxeter.hpp"
#include "tnn/error.hpp"
#include "tnn/fibration.hpp"
#include "tnn/flow.hpp"
#include "tnn/json_io.hpp"
#include "tnn/tnn.hpp"
#include "tnn/verify.hpp"

namespace tnn {

/// "1,2,1/2" -> rationals; empty text -> no parameters.
inline std::vector<Rat> parse_rat_list(const std::string& text) {
  std::vector<Rat> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    out.push_back(parse_rat(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

inline void require_rank(const RatMatrix& x, const Permutation& u) {
  if (x.n() != u.n())
    throw Error(Errc::SizeMismatch, "matrix is " + std::to_string(x.n()) + "x" +
                                        std::to_string(x.n()) + " but u lies in S_" +
                                        std::to_string(u.n()));
}

inline json cmd_param(const ReducedWord& word, const std::vector<Rat>& params) {
  return cell_point_to_json(lusztig_point(word, params));
}

inline json cmd_cell_of(const RatMatrix& x) { return {{"cell", cell_of(x).to_string()}}; }

inline json cmd_tnn(const RatMatrix& x) { return {{"tnn", is_tnn(x)}}; }

inline json cmd_project(const RatMatrix& x, const Permutation& u) {
  require_rank(x, u);
  return matrix_to_json(pi_u(x, u));
}

inline json cmd_rho(const RatMatrix& x, const RatMatrix& base, const Permutation& u) {
  require_rank(x, u);
  require_rank(base, u);
  return matrix_to_json(rho(x, base, u));
}

/// psi(x) as matrix JSON, with its exact str.
inline json cmd_psi(const RatMatrix& x, const Permutation& u) {
  require_rank(x, u);
  const auto p = psi(x, u);
  json j = matrix_to_json(p);
  j["str"] = to_string(str(p));
  return j;
}

/// Strata of L_eps(u, v) with dimensions, sampled counts and the
/// combinatorial Euler characteristic. `ok` is false unless chi = 1 and
/// every stratum was sampled.
struct Census {
  json report;
  bool ok = true;
};

inline Census cmd_link_census(const Permutation& u, const Permutation& v, const Rat& epsilon,
                              int per_stratum, std::uint64_t seed) {
  const auto sample = link_sample(u, v, epsilon, per_stratum, seed);
  Census c;
  json strata = json::array();
  for (const auto& s : sample.strata) {
    strata.push_back({{"w", s.w.to_string()}, {"dimension", s.dimension}, {"count", s.count}});
    if (s.count < 1) c.ok = false;
  }
  const long chi = sample.euler_characteristic();
  if (chi != 1) c.ok = false;
  c.report = json{{"u", u.to_string()},
                  {"v", v.to_string()},
                  {"epsilon", to_string(epsilon)},
                  {"strata", std::move(strata)},
                  {"euler_characteristic", chi},
                  {"passed", c.ok}};
  return c;
}

/// Runs one suite, or every suite for "all".
inline std::vector<VerificationReport> cmd_verify(const std::string& suite, const RunConfig& cfg) {
  std::vector<VerificationReport> out;
  if (suite == "all") {
    for (const auto& name : suite_names()) out.push_back(run_suite(name, cfg));
  } else {
    out.push_back(run_suite(suite, cfg));
  }
  return out;
}

}  // namespace tnn
