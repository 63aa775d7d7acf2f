#pragma once

// Named verification suites. Each suite runs a family of randomized or
// exhaustive checks from a seed and reports every failing case together
// with a command line that reproduces it.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "tnn/coxeter.hpp"
#include "tnn/error.hpp"
#include "tnn/fibration.hpp"
#include "tnn/flow.hpp"
#include "tnn/gauss.hpp"
#include "tnn/json_io.hpp"
#include "tnn/matrix.hpp"
#include "tnn/sampling.hpp"
#include "tnn/tnn.hpp"

namespace tnn {

struct RunConfig {
  int n = 3;
  std::uint64_t seed = 1;
  double epsilon = 1.0;
  double tol = 1e-9;
  long max_steps = 200000;
  int samples = 100;
  int threads = 0;  // 0: TNN_STRATA_THREADS or hardware concurrency

  void validate() const {
    if (n < 2) throw Error(Errc::Parse, "--n must be at least 2");
    if (!(tol > 0)) throw Error(Errc::Parse, "--tol must be positive");
    if (!(epsilon > 0)) throw Error(Errc::Parse, "--epsilon must be positive");
    if (samples < 1) throw Error(Errc::Parse, "--samples must be positive");
  }
};

struct Failure {
  std::string key;      // stable case identifier, used for ordering
  std::string message;  // the violated assertion with its inputs
  std::string repro;    // command line reproducing the suite run
};

struct VerificationReport {
  std::string suite;
  long cases = 0;
  std::vector<Failure> failures;
  double wall_seconds = 0;
  json summary = json::object();  // suite-specific measured values

  VerificationReport() = default;
  explicit VerificationReport(std::string name) : suite(std::move(name)) {}

  bool passed() const { return failures.empty(); }

  json to_json(bool with_timing = false) const {
    json f = json::array();
    for (const auto& x : failures)
      f.push_back({{"case", x.key}, {"message", x.message}, {"repro", x.repro}});
    json j{{"suite", suite}, {"cases", cases}, {"passed", passed()},
           {"failures", std::move(f)}, {"summary", summary}};
    if (with_timing) j["wall_seconds"] = wall_seconds;
    return j;
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "gauss", "bruhat", "verma", "param-cell", "factorization", "rho", "equivariance",
      "signs", "psi-positivity", "flow", "retraction", "link-census"};
  return names;
}

namespace detail {

inline int thread_cap(const RunConfig& cfg) {
  int cap = cfg.threads;
  if (cap <= 0) {
    if (const char* env = std::getenv("TNN_STRATA_THREADS")) cap = std::atoi(env);
    if (cap <= 0) cap = static_cast<int>(std::thread::hardware_concurrency());
  }
  return std::max(1, cap);
}

inline std::string repro_line(const std::string& suite, const RunConfig& cfg) {
  return "tnn-strata verify " + suite + " --n " + std::to_string(cfg.n) + " --seed " +
         std::to_string(cfg.seed) + " --samples " + std::to_string(cfg.samples);
}

/// A case returns an empty string on success, otherwise the failure message.
using CaseFn = std::function<std::string(long index, Rng& rng)>;

/// Runs `count` independent cases, each with its own generator seeded from
/// (seed, index), on up to thread_cap workers. Errors become failures.
inline void run_cases(VerificationReport& rep, const RunConfig& cfg, long count,
                      const std::function<std::string(long)>& key_of, const CaseFn& fn) {
  std::vector<std::string> results(count);
  auto work = [&](long i) {
    Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    try {
      results[i] = fn(i, rng);
    } catch (const Error& e) {
      results[i] = e.what();
    } catch (const std::exception& e) {
      results[i] = std::string("exception: ") + e.what();
    }
  };
  const int workers = static_cast<int>(std::min<long>(thread_cap(cfg), std::max(1L, count)));
  if (workers <= 1) {
    for (long i = 0; i < count; ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&, t] {
        for (long i = t; i < count; i += workers) work(i);
      });
    for (auto& th : pool) th.join();
  }
  rep.cases += count;
  for (long i = 0; i < count; ++i)
    if (!results[i].empty())
      rep.failures.push_back({key_of(i), results[i], repro_line(rep.suite, cfg)});
}

inline std::string index_key(const std::string& prefix, long i) {
  std::string s = std::to_string(i);
  return prefix + std::string(s.size() < 8 ? 8 - s.size() : 0, '0') + s;
}

inline std::string show(const RatMatrix& m) { return matrix_to_json(m)["entries"].dump(); }

inline Permutation random_non_top(Rng& rng, int n) {
  const auto top = Permutation::longest(n);
  while (true) {
    auto u = random_permutation(rng, n);
    if (u != top) return u;
  }
}

/// Random x in some Y°_w with w >= u (w > u when strict).
inline std::pair<Permutation, RatMatrix> random_point_above(Rng& rng, const Permutation& u,
                                                            bool strict) {
  const auto w = random_above(rng, u, !strict);
  return {w, random_cell_point(rng, w)};
}

}  // namespace detail

/// Richardson-extrapolated forward difference, in exact arithmetic, of
/// tau -> str(rho_{x_u}(d(tau) x d(tau)^{-1})) at tau = 1 with h = 1e-3, 1e-4.
inline double psi_finite_difference(const RatMatrix& x, const RatMatrix& x_u,
                                    const Permutation& u) {
  const Rat s0 = str(x);
  auto quotient = [&](const Rat& h) {
    return Rat((str(rho(conj_d(Rat(Rat(1) + h), x), x_u, u)) - s0) / h);
  };
  const Rat d3 = quotient(Rat(1, 1000)), d4 = quotient(Rat(1, 10000));
  return Rat((10 * d4 - d3) / 9).get_d();
}

// ------------------------------------------------------------ suites

inline VerificationReport verify_gauss(const RunConfig& cfg) {
  VerificationReport rep("gauss");
  const int n = cfg.n;
  detail::run_cases(rep, cfg, cfg.samples, [](long i) { return detail::index_key("gauss/", i); },
                    [&](long, Rng& rng) -> std::string {
    RatMatrix x = random_rat_matrix(rng, n);
    while (!is_in_G0(x)) x = random_rat_matrix(rng, n);
    const auto f = gauss_decompose(x);
    if (!(f.lower * f.diag * f.upper == x)) return "round trip failed for " + detail::show(x);
    if (!is_in_N_minus(f.lower) || !is_in_N(f.upper) || !is_in_H(f.diag))
      return "factor shapes wrong for " + detail::show(x);
    // [[x]_+ y]_+ = [x y]_+
    const RatMatrix y = random_rat_matrix(rng, n);
    if (is_in_G0(x * y) && !(gauss_plus(RatMatrix(f.upper * y)) == gauss_plus(RatMatrix(x * y))))
      return "[[x]_+ y]_+ != [xy]_+ for x = " + detail::show(x) + ", y = " + detail::show(y);
    // w^{-1} N_- w in N_- N
    const auto w = random_permutation(rng, n);
    const auto nm = random_unipotent_lower(rng, n);
    const auto z = conj_by_perm(nm, w);
    auto gz = try_gauss_decompose(z);
    if (!gz || !(gz->diag == RatMatrix::identity(n)))
      return "w^{-1} n_- w not in N_- N for w = " + w.to_string();
    // z in w^{-1} B_- w  =>  [z]_-, [z]_+ in w^{-1} N_- w
    RatMatrix bm = nm;
    for (int i = 0; i < n; ++i) bm(i, i) = random_positive_rat(rng);
    const auto zb = gauss_decompose(conj_by_perm(bm, w));
    if (!is_in_N_minus(conj_by_perm_inv(zb.lower, w)) ||
        !is_in_N_minus(conj_by_perm_inv(zb.upper, w)))
      return "[z]_+- not in w^{-1} N_- w for w = " + w.to_string();
    return "";
  });
  return rep;
}

inline VerificationReport verify_bruhat(const RunConfig& cfg) {
  VerificationReport rep("bruhat");
  const auto all = all_permutations(cfg.n);
  const long m = static_cast<long>(all.size());
  detail::run_cases(
      rep, cfg, m * m,
      [&](long i) { return "bruhat/" + all[i / m].to_string() + "|" + all[i % m].to_string(); },
      [&](long i, Rng&) -> std::string {
        const auto& u = all[i / m];
        const auto& v = all[i % m];
        if (u.length() != u.inverse().length()) return "length(w) != length(w^-1)";
        const bool le = bruhat_leq(u, v);
        if (le != bruhat_leq(u.inverse(), v.inverse())) return "inverse symmetry fails";
        if (le) {
          const long expect = ((v.length() - u.length()) % 2 == 0) ? 1 : -1;
          const long mu = mobius(u, v);
          if (mu != expect)
            return "mobius = " + std::to_string(mu) + ", expected " + std::to_string(expect);
        }
        return "";
      });
  return rep;
}

inline VerificationReport verify_verma(const RunConfig& cfg) {
  VerificationReport rep("verma");
  const auto all = all_permutations(cfg.n);
  std::vector<std::pair<Permutation, Permutation>> pairs;
  for (const auto& u : all)
    for (const auto& v : all)
      if (bruhat_leq(u, v)) pairs.emplace_back(u, v);
  detail::run_cases(
      rep, cfg, static_cast<long>(pairs.size()),
      [&](long i) { return "verma/" + pairs[i].first.to_string() + "|" + pairs[i].second.to_string(); },
      [&](long i, Rng&) -> std::string {
        const auto& [u, v] = pairs[i];
        const long s = verma_sum(u, v);
        const long expect = u == v ? (u.length() % 2 == 0 ? 1 : -1) : 0;
        if (s != expect)
          return "sum of (-1)^l(w) over [u,v] is " + std::to_string(s) + ", expected " +
                 std::to_string(expect);
        return "";
      });
  rep.summary["intervals"] = pairs.size();
  return rep;
}

/// samples = parameter vectors per cell.
inline VerificationReport verify_param_cell(const RunConfig& cfg) {
  VerificationReport rep("param-cell");
  const auto all = all_permutations(cfg.n);
  const long per = cfg.samples;
  detail::run_cases(
      rep, cfg, static_cast<long>(all.size()) * per,
      [&](long i) { return "param-cell/" + all[i / per].to_string() + "#" + std::to_string(i % per); },
      [&](long i, Rng& rng) -> std::string {
        const auto& w = all[i / per];
        const auto word = reduced_word(w);
        const auto params = random_params(rng, word.size());
        const auto x = lusztig_matrix(word, params);
        const auto c = cell_of(x);
        if (c != w) return "cell_of = " + c.to_string() + " for word " + word.to_string();
        if (!is_tnn(x)) return "not TNN: " + detail::show(x);
        return "";
      });
  return rep;
}

inline VerificationReport verify_factorization(const RunConfig& cfg) {
  VerificationReport rep("factorization");
  const int n = cfg.n;
  detail::run_cases(rep, cfg, cfg.samples,
                    [](long i) { return detail::index_key("factorization/", i); },
                    [&](long, Rng& rng) -> std::string {
    const auto u = random_permutation(rng, n);
    const auto [w, x] = detail::random_point_above(rng, u, false);
    const auto f = factor_u(x, u);
    const std::string ctx = " (u = " + u.to_string() + ", x = " + detail::show(x) + ")";
    if (!(f.x_u * f.x_upper_u == x)) return "x_u x^u != x" + ctx;
    if (cell_of(f.x_u) != u) return "cell_of(x_u) != u" + ctx;
    if (!in_N_of_w(f.x_upper_u, u)) return "x^u not in N(u)" + ctx;
    if (!is_tnn(f.x_u)) return "x_u not TNN" + ctx;
    if (!(f.A == f.y * f.x_upper_u)) return "A != y x^u" + ctx;
    if (!(gauss_plus(mul_perm_left(u, f.y)) == f.x_u)) return "x_u != [u y]_+" + ctx;
    if (!in_Nminus_of_w(f.y, u)) return "y not in N_-(u)" + ctx;
    const auto again = factor_u(RatMatrix(f.x_u * f.x_upper_u), u);
    if (!(again.x_u == f.x_u && again.x_upper_u == f.x_upper_u)) return "not unique" + ctx;
    if (!(pi_u(f.x_u, u) == f.x_u)) return "pi_u not idempotent" + ctx;
    return "";
  });
  return rep;
}

inline VerificationReport verify_rho(const RunConfig& cfg) {
  VerificationReport rep("rho");
  const int n = cfg.n;
  detail::run_cases(rep, cfg, cfg.samples, [](long i) { return detail::index_key("rho/", i); },
                    [&](long, Rng& rng) -> std::string {
    const auto u = random_permutation(rng, n);
    const auto [w, xt] = detail::random_point_above(rng, u, false);
    const auto x_u = random_cell_point(rng, u);
    const std::string ctx = " (u = " + u.to_string() + ", x~ = " + detail::show(xt) +
                            ", x_u = " + detail::show(x_u) + ")";
    const auto xp = rho(xt, x_u, u);
    if (!(pi_u(xp, u) == x_u)) return "pi_u(rho(x~)) != x_u" + ctx;
    if (cell_of(xp) != w) return "rho changed the cell" + ctx;
    if (!is_tnn(xp)) return "rho(x~) not TNN" + ctx;
    const auto back = rho(xp, pi_u(xt, u), u);
    if (!(back == xt)) return "rho is not inverted by the opposite rho" + ctx;
    return "";
  });
  if (n == 3) {
    // closed forms of the SL(3), u = s_1 example
    const auto s1 = Permutation::simple(1, 3);
    RunConfig c3 = cfg;
    c3.seed = mix_seed(cfg.seed, 0x5133);
    detail::run_cases(rep, c3, 50, [](long i) { return detail::index_key("rho/sl3/", i); },
                      [&](long, Rng& rng) -> std::string {
      const auto [w, xt] = detail::random_point_above(rng, s1, false);
      const Rat a = random_positive_rat(rng);
      RatMatrix x_u = RatMatrix::identity(3);
      x_u(0, 1) = a;
      const Rat t12 = xt(0, 1), t13 = xt(0, 2), t23 = xt(1, 2);
      const auto frame = factor_u(xt, s1);
      const auto n1 = recover_shift(x_u, frame.x_u, s1);
      const auto nm = gauss_minus(RatMatrix(inverse(frame.x_upper_u) * n1));
      RatMatrix expect_nm = RatMatrix::identity(3);
      expect_nm(1, 0) = 1 / a - 1 / t12;
      if (!(nm == expect_nm)) return "n_- differs from closed form: " + detail::show(nm);
      const auto xp = rho(xt, x_u, s1);
      RatMatrix expect = RatMatrix::identity(3);
      expect(0, 1) = a;
      expect(0, 2) = a * t13 / t12;
      expect(1, 2) = (t12 * t23 - t13) / a + t13 / t12;
      if (!(xp == expect)) return "x' differs from closed form: " + detail::show(xp);
      return "";
    });
  }
  return rep;
}

inline VerificationReport verify_equivariance(const RunConfig& cfg) {
  VerificationReport rep("equivariance");
  const int n = cfg.n;
  const std::vector<Rat> taus = {Rat(1, 3), Rat(2), Rat(7, 5)};
  detail::run_cases(rep, cfg, cfg.samples,
                    [](long i) { return detail::index_key("equivariance/", i); },
                    [&](long i, Rng& rng) -> std::string {
    const Rat tau = taus[i % taus.size()];
    const auto u = random_permutation(rng, n);
    const auto [w, x] = detail::random_point_above(rng, u, false);
    const std::string ctx = " (tau = " + to_string(tau) + ", u = " + u.to_string() +
                            ", x = " + detail::show(x) + ")";
    const auto f = factor_u(x, u);
    const auto ft = factor_u(conj_d(tau, x), u);
    if (!(ft.x_u == conj_d(tau, f.x_u))) return "(dxd^-1)_u != d x_u d^-1" + ctx;
    if (!(ft.x_upper_u == conj_d(tau, f.x_upper_u))) return "(dxd^-1)^u != d x^u d^-1" + ctx;
    if (!(conj_d(tau, f.x_u) == gauss_plus(mul_perm_left(u, conj_d(tau, f.y)))))
      return "d x_u d^-1 != [u d y d^-1]_+" + ctx;
    const auto n1 = recover_shift(f.x_u, conj_d(tau, f.x_u), u);
    if (!(n1 == conj_d(tau, inverse(f.y)) * f.y)) return "n_1 != d y^-1 d^-1 y" + ctx;
    const auto lhs = rho(conj_d(tau, x), f.x_u, u);
    const auto rhs = x * inverse(gauss_plus(RatMatrix(conj_d(tau, inverse(f.A)) * f.A)));
    if (!(lhs == rhs)) return "rho(dxd^-1) != x ([d A^-1 d^-1 A]_+)^-1" + ctx;
    return "";
  });
  return rep;
}

inline VerificationReport verify_signs(const RunConfig& cfg) {
  VerificationReport rep("signs");
  const int n = cfg.n;
  detail::run_cases(rep, cfg, cfg.samples, [](long i) { return detail::index_key("signs/", i); },
                    [&](long, Rng& rng) -> std::string {
    const auto u = random_permutation(rng, n);
    const auto [w, x] = detail::random_point_above(rng, u, false);
    const auto report = sign_pattern_check(factor_u(x, u).A, u);
    if (report.ok()) return "";
    std::string msg = "sign pattern violated (u = " + u.to_string() + ", x = " + detail::show(x) + "):";
    for (const auto& v : report.violations)
      msg += " (i=" + std::to_string(v.i + 1) + ",j=" + std::to_string(v.j + 1) + ") " +
             v.expectation + " got " + to_string(v.value) + ";";
    if (sgn(report.str_value) < 0) msg += " str(A^-1 nu A) = " + to_string(report.str_value);
    return msg;
  });
  return rep;
}

inline VerificationReport verify_psi_positivity(const RunConfig& cfg) {
  VerificationReport rep("psi-positivity");
  const int n = cfg.n;
  std::mutex mu;
  Rat smallest(-1);
  double worst_fd = 0;
  detail::run_cases(rep, cfg, cfg.samples,
                    [](long i) { return detail::index_key("psi-positivity/", i); },
                    [&](long, Rng& rng) -> std::string {
    const auto u = detail::random_non_top(rng, n);
    const auto [w, x] = detail::random_point_above(rng, u, true);
    const std::string ctx = " (u = " + u.to_string() + ", x = " + detail::show(x) + ")";
    const auto p = psi(x, u);
    const Rat s = str(p);
    {
      std::lock_guard lock(mu);
      if (sgn(smallest) < 0 || s < smallest) smallest = s;
    }
    if (sgn(s) <= 0) return "witness: str(psi(x)) = " + to_string(s) + ctx;
    const RatMatrix tangent = inverse(x) * p;
    if (!(pi_n(tangent) == tangent))
      return "x^-1 psi(x) is not strictly upper triangular" + ctx;
    const auto base = factor_u(x, u).x_u;
    if (!(psi(base, u) == RatMatrix(n))) return "psi(x_u) != 0" + ctx;
    // str(psi) against the finite difference of tau -> str(rho(d(tau) x d(tau)^-1)) at 1
    const double fd = psi_finite_difference(x, base, u);
    const double rel = std::fabs(fd - s.get_d()) / (1.0 + std::fabs(s.get_d()));
    {
      std::lock_guard lock(mu);
      worst_fd = std::max(worst_fd, rel);
    }
    if (!(rel < 1e-5))
      return "finite difference " + std::to_string(fd) + " vs str(psi) " + to_string(s) + ctx;
    return "";
  });
  rep.summary["min_str_psi"] = sgn(smallest) < 0 ? "none" : to_string(smallest);
  rep.summary["max_finite_difference_error"] = worst_fd;
  return rep;
}

/// Backward flows converge to the base; forward flows raise str.
inline VerificationReport verify_flow(const RunConfig& cfg) {
  VerificationReport rep("flow");
  const int n = cfg.n;
  std::mutex mu;
  double worst = 0;
  FlowOptions opt;
  opt.max_steps = cfg.max_steps;
  opt.snapshot_every = 5;
  detail::run_cases(rep, cfg, cfg.samples, [](long i) { return detail::index_key("flow/", i); },
                    [&](long, Rng& rng) -> std::string {
    const auto u = detail::random_non_top(rng, n);
    const auto w = random_above(rng, u);
    const auto base = standard_base_point(u);
    const auto x0 = rho(random_cell_point(rng, w), base, u);
    const std::string ctx = " (u = " + u.to_string() + ", x0 = " + detail::show(x0) + ")";
    FlowField field(u, to_float(base));
    FlowOptions o = opt;
    o.stratum = w;
    const auto back = flow(field, to_float(x0), Direction::Backward, StopRule::converge(), o);
    const double dist = max_abs_diff(back.final().point, field.base);
    {
      std::lock_guard lock(mu);
      worst = std::max(worst, dist);
    }
    if (!(dist < 1e-6)) return "backward limit is " + std::to_string(dist) + " from x_u" + ctx;
    for (std::size_t k = 1; k < back.states.size(); ++k)
      if (!(back.states[k].str_value < back.states[k - 1].str_value))
        return "str not decreasing backward at snapshot " + std::to_string(k) + ctx;
    const auto fwd = flow(field, to_float(x0), Direction::Forward, StopRule::for_time(0.5), o);
    for (std::size_t k = 1; k < fwd.states.size(); ++k)
      if (!(fwd.states[k].str_value > fwd.states[k - 1].str_value))
        return "str not increasing forward at snapshot " + std::to_string(k) + ctx;
    return "";
  });
  rep.summary["max_backward_distance"] = worst;
  return rep;
}

/// Retraction of L_eps(e, w_o) to a point.
inline VerificationReport verify_retraction(const RunConfig& cfg) {
  VerificationReport rep("retraction");
  const int n = cfg.n;
  const auto u = Permutation::identity(n), v = Permutation::longest(n);
  const auto z = standard_base_point(v);
  const int strata = static_cast<int>(interval(u, v).size()) - 1;
  const int per = std::max(1, (cfg.samples + strata - 1) / strata);
  const auto sample = link_sample(u, v, Rat(cfg.epsilon), per, cfg.seed);
  std::vector<FloatMatrix> ends(sample.points.size());
  std::vector<double> d0(sample.points.size()), dsmall(sample.points.size()),
      jump(sample.points.size());
  detail::run_cases(
      rep, cfg, static_cast<long>(sample.points.size()),
      [](long i) { return detail::index_key("retraction/", i); },
      [&](long i, Rng&) -> std::string {
        const auto& x = sample.points[i].point;
        d0[i] = max_abs_diff(retraction(x, 0.0, u, v, z, cfg.epsilon), x);
        dsmall[i] = max_abs_diff(retraction(x, 1e-7, u, v, z, cfg.epsilon), x);
        ends[i] = retraction(x, 1.0, u, v, z, cfg.epsilon);
        double j = 0;
        for (int k = 1; k <= 20; ++k) {
          const auto r = retraction(x, k / 20.0, u, v, z, cfg.epsilon);
          const auto r2 = retraction(x, k / 20.0 - 1e-3, u, v, z, cfg.epsilon);
          j = std::max(j, max_abs_diff(r, r2));
        }
        jump[i] = j;
        if (!(d0[i] < 1e-6)) return "R(x,0) differs from x by " + std::to_string(d0[i]);
        if (!(dsmall[i] < 1e-6)) return "R(x,1e-7) differs from x by " + std::to_string(dsmall[i]);
        if (!(j < 5e-2)) return "R(x,.) jumps by " + std::to_string(j) + " across 1e-3 in tau";
        return "";
      });
  double spread = 0;
  for (std::size_t i = 1; i < ends.size(); ++i)
    if (ends[i].n() && ends[0].n()) spread = std::max(spread, max_abs_diff(ends[i], ends[0]));
  rep.cases += 1;
  if (!(spread < 1e-6))
    rep.failures.push_back({"retraction/endpoint", "R(x,1) spread is " + std::to_string(spread),
                            detail::repro_line(rep.suite, cfg)});
  rep.summary["points"] = sample.points.size();
  rep.summary["endpoint_spread"] = spread;
  rep.summary["max_R0_distance"] = *std::max_element(d0.begin(), d0.end());
  rep.summary["max_small_tau_distance"] = *std::max_element(dsmall.begin(), dsmall.end());
  rep.summary["max_tau_jump"] = *std::max_element(jump.begin(), jump.end());
  return rep;
}

/// Per-interval census of L_eps(u, v) strata for every u < v in S_n.
/// samples = link points per stratum (capped at 3).
inline VerificationReport verify_link_census(const RunConfig& cfg) {
  VerificationReport rep("link-census");
  const int n = cfg.n;
  const auto all = all_permutations(n);
  const auto top = Permutation::longest(n);
  const int per = std::min(cfg.samples, 3);
  const std::vector<Rat> eps = {Rat(1, 2), Rat(1), Rat(2)};
  std::vector<Permutation> bases;
  for (const auto& u : all)
    if (u != top) bases.push_back(u);
  std::mutex mu;
  long intervals = 0;
  double worst_level = 0, worst_cone = 0;
  detail::run_cases(
      rep, cfg, static_cast<long>(bases.size()),
      [&](long i) { return "link-census/" + bases[i].to_string(); },
      [&](long i, Rng&) -> std::string {
        const auto& u = bases[i];
        // L_eps(u, w_o) carries every stratum w > u; L_eps(u, v) is its part below v
        std::vector<LinkSample> samples;
        for (const auto& e : eps) samples.push_back(link_sample(u, top, e, per, cfg.seed));
        const double base_str = str(to_float(samples[0].base));
        double level = 0, cone = 0;
        for (std::size_t k = 0; k < eps.size(); ++k)
          for (const auto& p : samples[k].points)
            level = std::max(level, std::fabs(str(p.point) - base_str - eps[k].get_d()));
        // same seeds: the eps = 1/2 points flow onto the eps = 1 and 2 points
        FlowField field(u, to_float(samples[0].base));
        for (std::size_t m = 0; m < samples[0].points.size(); ++m)
          for (std::size_t k = 1; k < eps.size(); ++k) {
            FlowOptions o;
            o.stratum = samples[0].points[m].stratum;
            const auto q = link_point(field, samples[0].points[m].point, eps[k].get_d(), o);
            cone = std::max(cone, max_abs_diff(q, samples[k].points[m].point));
          }
        long local_intervals = 0;
        std::string err;
        for (const auto& v : all) {
          if (v == u || !bruhat_leq(u, v)) continue;
          ++local_intervals;
          const auto iv = interval(u, v);
          std::vector<int> counts_ref;
          for (std::size_t k = 0; k < eps.size(); ++k) {
            std::map<Permutation, int> seen;
            for (const auto& p : samples[k].points)
              if (bruhat_leq(p.stratum, v)) ++seen[p.stratum];
            long chi = 0;
            std::vector<int> counts;
            for (const auto& w : iv.elements) {
              if (w == u) continue;
              if (!seen.count(w)) err += " stratum " + w.to_string() + " unsampled in (" +
                                         u.to_string() + "," + v.to_string() + "];";
              counts.push_back(seen[w]);
              const int dim = w.length() - u.length() - 1;
              chi += dim % 2 == 0 ? 1 : -1;
            }
            if (seen.size() != iv.size() - 1)
              err += " strata do not biject with (" + u.to_string() + "," + v.to_string() + "];";
            if (chi != 1) err += " chi = " + std::to_string(chi) + ";";
            if (k == 0) counts_ref = counts;
            else if (counts != counts_ref) err += " counts depend on epsilon;";
          }
        }
        for (const auto& s : samples)
          for (const auto& st : s.strata)
            if (st.dimension != st.w.length() - u.length() - 1) err += " bad dimension;";
        {
          std::lock_guard lock(mu);
          intervals += local_intervals;
          worst_level = std::max(worst_level, level);
          worst_cone = std::max(worst_cone, cone);
        }
        if (level > 1e-9) err += " link point off level by " + std::to_string(level) + ";";
        if (cone > 1e-6) err += " epsilon-levels not on common trajectories (" +
                                std::to_string(cone) + ");";
        return err;
      });
  rep.summary["intervals"] = intervals;
  rep.summary["max_level_error"] = worst_level;
  rep.summary["max_cone_mismatch"] = worst_cone;
  return rep;
}

inline VerificationReport run_suite(const std::string& name, const RunConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  if (name == "gauss") rep = verify_gauss(cfg);
  else if (name == "bruhat") rep = verify_bruhat(cfg);
  else if (name == "verma") rep = verify_verma(cfg);
  else if (name == "param-cell") rep = verify_param_cell(cfg);
  else if (name == "factorization") rep = verify_factorization(cfg);
  else if (name == "rho") rep = verify_rho(cfg);
  else if (name == "equivariance") rep = verify_equivariance(cfg);
  else if (name == "signs") rep = verify_signs(cfg);
  else if (name == "psi-positivity") rep = verify_psi_positivity(cfg);
  else if (name == "flow") rep = verify_flow(cfg);
  else if (name == "retraction") rep = verify_retraction(cfg);
  else if (name == "link-census") rep = verify_link_census(cfg);
  else throw Error(Errc::Parse, "unknown suite \"" + name + "\"");
  std::sort(rep.failures.begin(), rep.failures.end(),
            [](const Failure& a, const Failure& b) { return a.key < b.key; });
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace tnn
