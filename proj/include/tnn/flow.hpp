#pragma once

// The str height function, the vector field psi on the fibers of pi_u, its
// numerical integration, link points, link sampling and the retraction of
// a link onto a point.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tnn/coxeter.hpp"
#include "tnn/error.hpp"
#include "tnn/fibration.hpp"
#include "tnn/gauss.hpp"
#include "tnn/matrix.hpp"
#include "tnn/sampling.hpp"
#include "tnn/tnn.hpp"

namespace tnn {

/// Sum of the superdiagonal entries; defined for any square matrix.
template <class T>
T str(const Matrix<T>& x) {
  T s(0);
  for (int i = 0; i + 1 < x.n(); ++i) s += x(i, i + 1);
  return s;
}

/// nu = diag(n, n-1, ..., 1).
template <class T>
Matrix<T> nu_matrix(int n) {
  std::vector<T> d;
  for (int k = 0; k < n; ++k) d.push_back(T(n - k));
  return Matrix<T>::diagonal(d);
}

/// Projection onto the strictly upper triangular part along b_-. The
/// diagonal belongs to b_- and is zeroed too.
template <class T>
Matrix<T> pi_n(const Matrix<T>& m) {
  Matrix<T> out(m.n());
  for (int i = 0; i < m.n(); ++i)
    for (int j = i + 1; j < m.n(); ++j) out(i, j) = m(i, j);
  return out;
}

/// psi(x) = x pi_n(A^{-1} nu A) with A from the factorization at x.
template <class T>
Matrix<T> psi_unchecked(const Matrix<T>& x, const Permutation& u) {
  const auto frame = factor_u(x, u);
  return x * pi_n(inverse(frame.A) * nu_matrix<T>(x.n()) * frame.A);
}

/// Exact psi at a point of Y_{>=u}.
inline RatMatrix psi(const RatMatrix& x, const Permutation& u) {
  if (!in_Y_geq_u(x, u))
    throw Error(Errc::NotInG0u, "psi expects x in Y_{>=u} for u = " + u.to_string());
  return psi_unchecked(x, u);
}

// ------------------------------------------------------------ sign patterns

struct SignViolation {
  int i = 0, j = 0;          // 0-based
  std::string expectation;   // ">= 0", "<= 0", "== 0", "prefix >= 0"
  Rat value;
};

struct SignReport {
  std::vector<SignViolation> violations;
  Rat str_value;  // str(A^{-1} nu A)
  bool ok() const { return violations.empty() && sgn(str_value) >= 0; }
};

/// Checks the sign pattern of the products (A^{-1})_{j,i} A_{i,j+1}:
///   u(j) <= u(i) <= u(j+1) and i <= j   ->  >= 0
///   u(j) <= u(i) <= u(j+1) and i >  j   ->  <= 0
///   otherwise                           ->  == 0
/// plus nonnegativity of every partial sum sum_{i<=k} (the entries of
/// A^{-1} nu_k A) and of str(A^{-1} nu A).
inline SignReport sign_pattern_check(const RatMatrix& A, const Permutation& u) {
  const int n = A.n();
  const auto Ainv = inverse(A);
  SignReport rep;
  for (int j = 0; j + 1 < n; ++j) {
    Rat prefix(0);
    for (int i = 0; i < n; ++i) {
      const Rat prod = Ainv(j, i) * A(i, j + 1);
      const bool chain = u(j) <= u(i) && u(i) <= u(j + 1);
      if (chain && i <= j && sgn(prod) < 0) rep.violations.push_back({i, j, ">= 0", prod});
      if (chain && i > j && sgn(prod) > 0) rep.violations.push_back({i, j, "<= 0", prod});
      if (!chain && sgn(prod) != 0) rep.violations.push_back({i, j, "== 0", prod});
      prefix += prod;
      if (i + 1 < n && sgn(prefix) < 0)
        rep.violations.push_back({i, j, "prefix >= 0", prefix});
    }
  }
  rep.str_value = str(Ainv * nu_matrix<Rat>(n) * A);
  return rep;
}

// ------------------------------------------------------------ flow

enum class Direction { Forward, Backward };

/// The vector field psi restricted to the fiber of pi_u over a fixed base.
struct FlowField {
  Permutation u;
  FloatMatrix base;  // x_u, in N^u
  FloatMatrix nu;

  FlowField(Permutation u_, FloatMatrix base_)
      : u(std::move(u_)), base(std::move(base_)), nu(nu_matrix<double>(u.n())) {}

  FloatMatrix operator()(const FloatMatrix& x) const {
    const auto frame = factor_u(x, u);
    return x * pi_n(inverse(frame.A) * nu * frame.A);
  }

  FloatMatrix reproject(const FloatMatrix& x) const { return rho(x, base, u); }
  double base_str() const { return str(base); }
};

struct FlowState {
  FloatMatrix point;
  double time = 0;       // negative along backward flow
  double str_value = 0;
  Permutation stratum;   // frozen at the start of the trajectory
  double step = 0;
};

struct StopRule {
  enum class Kind { Converge, Level, Time };
  Kind kind = Kind::Converge;
  double level = 0;             // absolute str value for Kind::Level
  double duration = 0;          // integration time for Kind::Time
  double converge_tol = 1e-10;  // Kind::Converge: ||psi|| or str gap below this
  double level_tol = 1e-11;     // Kind::Level: |str - level| at the returned point

  static StopRule converge(double tol = 1e-10) { return {Kind::Converge, 0, 0, tol}; }
  static StopRule at_level(double level) { return {Kind::Level, level, 0}; }
  static StopRule for_time(double t) { return {Kind::Time, 0, t}; }
};

struct FlowOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  long max_steps = 200000;
  int reproject_every = 10;
  int snapshot_every = 1;  // 0 keeps only the first and last state
  double h0 = 1e-3;
  double h_min = 1e-14;
  double h_max = 0.5;
  // A point is on stratum w when w is its numerical label at the loose or at
  // the tight relative rank tolerance. Integration error lifts vanishing
  // minors above the tight one; points near a boundary have positive minors
  // below the loose one.
  double stratum_tol = 1e-6;
  double stratum_tol_tight = 1e-12;
  double stratum_floor = 1e-2;  // only check labels this far above str(x_u)
  bool check_stratum = true;
  std::optional<Permutation> stratum;  // known label; computed when absent
};

struct Trajectory {
  std::vector<FlowState> states;
  std::string stop_reason;
  long steps = 0;
  long rejected = 0;
  const FlowState& final() const { return states.back(); }
};

namespace detail {

struct DpStep {
  FloatMatrix x;
  double err = 0;
};

/// One Dormand-Prince 5(4) step of dx/dt = sign * psi(x). Returns nullopt if
/// psi cannot be evaluated at some stage (the step left G_0 u).
inline std::optional<DpStep> dp_step(const FlowField& f, const FloatMatrix& x, double h,
                                     double sign, const FlowOptions& opt) {
  static constexpr double a[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
      {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  static constexpr double e[7] = {35.0 / 384 - 5179.0 / 57600,
                                  0,
                                  500.0 / 1113 - 7571.0 / 16695,
                                  125.0 / 192 - 393.0 / 640,
                                  -2187.0 / 6784 + 92097.0 / 339200,
                                  11.0 / 84 - 187.0 / 2100,
                                  -1.0 / 40};
  const int n = x.n();
  std::vector<FloatMatrix> k;
  k.reserve(7);
  try {
    for (int s = 0; s < 7; ++s) {
      FloatMatrix xs = x;
      for (int r = 0; r < s; ++r)
        if (a[s][r] != 0) xs += (h * a[s][r]) * k[r];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (!std::isfinite(xs(i, j))) return std::nullopt;
      k.push_back(sign * f(xs));
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  DpStep out{x, 0};
  for (int r = 0; r < 6; ++r)
    if (a[6][r] != 0) out.x += (h * a[6][r]) * k[r];
  double err = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double ev = 0;
      for (int r = 0; r < 7; ++r) ev += e[r] * k[r](i, j);
      ev *= h;
      const double sc = opt.atol + opt.rtol * std::max(std::fabs(x(i, j)), std::fabs(out.x(i, j)));
      err = std::max(err, std::fabs(ev) / sc);
      if (!std::isfinite(out.x(i, j))) return std::nullopt;
    }
  out.err = err;
  return out;
}

inline Permutation label_or_throw(const FloatMatrix& x, double tol) {
  auto w = cell_label(x, tol);
  if (!w) throw Error(Errc::StratumEscape, "numerical rank jumps do not form a permutation");
  return *w;
}

inline bool on_stratum(const FloatMatrix& x, const Permutation& w, const FlowOptions& opt) {
  return cell_label(x, opt.stratum_tol) == w || cell_label(x, opt.stratum_tol_tight) == w;
}

}  // namespace detail

/// Integrates dx/dt = psi(x) (Backward: dx/dt = -psi(x)) on the fiber of
/// field.base. Re-projects onto the fiber with rho every few accepted steps.
inline Trajectory flow(const FlowField& field, const FloatMatrix& x0, Direction dir,
                       const StopRule& stop, const FlowOptions& opt = {}) {
  const double sign = dir == Direction::Forward ? 1.0 : -1.0;
  const double base_str = field.base_str();
  FloatMatrix x = x0;
  double tau = 0, h = opt.h0;

  Permutation stratum;
  if (opt.stratum) stratum = *opt.stratum;
  else if (str(x0) - base_str < opt.stratum_floor && max_abs_diff(x0, field.base) < opt.stratum_floor)
    stratum = field.u;
  else stratum = detail::label_or_throw(x0, opt.stratum_tol);

  Trajectory traj;
  auto snapshot = [&](double step) {
    traj.states.push_back({x, sign * tau, str(x), stratum, step});
  };
  auto check_stratum = [&]() {
    if (!opt.check_stratum || str(x) - base_str < opt.stratum_floor) return;
    if (detail::on_stratum(x, stratum, opt)) return;
    const auto now = cell_label(x, opt.stratum_tol);
    throw Error(Errc::StratumEscape, "label changed from " + stratum.to_string() + " to " +
                                         (now ? now->to_string() : std::string("?")) +
                                         " at t = " + std::to_string(sign * tau));
  };
  snapshot(0);

  auto psi_norm = [&](const FloatMatrix& p) { return max_abs(field(p)); };
  auto converged = [&]() {
    return str(x) - base_str < stop.converge_tol || psi_norm(x) < stop.converge_tol;
  };
  auto level_gap = [&](const FloatMatrix& p) { return str(p) - stop.level; };

  if (stop.kind == StopRule::Kind::Converge && converged()) {
    traj.stop_reason = "stationary";
    return traj;
  }
  if (stop.kind == StopRule::Kind::Level && std::fabs(level_gap(x)) <= stop.level_tol) {
    traj.stop_reason = "on-level";
    return traj;
  }

  long accepted = 0;
  while (true) {
    if (traj.steps >= opt.max_steps)
      throw Error(Errc::MaxStepsExceeded, "flow exceeded " + std::to_string(opt.max_steps) +
                                              " steps at str = " + std::to_string(str(x)));
    if (h < opt.h_min)
      throw Error(Errc::StepUnderflow, "step size fell below " + std::to_string(opt.h_min));
    if (stop.kind == StopRule::Kind::Time) h = std::min(h, stop.duration - tau);

    auto trial = detail::dp_step(field, x, h, sign, opt);
    ++traj.steps;
    if (!trial || trial->err > 1.0) {
      ++traj.rejected;
      const double fac = trial ? std::max(0.2, 0.9 * std::pow(trial->err, -0.2)) : 0.25;
      h *= fac;
      continue;
    }

    if (stop.kind == StopRule::Kind::Level) {
      const double g0 = level_gap(x), g1 = level_gap(trial->x);
      if (g0 * g1 <= 0) {
        // the level is crossed inside this step; bisect on the step length
        double lo = 0, hi = h;
        FloatMatrix best = trial->x;
        double best_gap = std::fabs(g1);
        for (int it = 0; it < 200 && best_gap > stop.level_tol; ++it) {
          const double mid = 0.5 * (lo + hi);
          auto part = detail::dp_step(field, x, mid, sign, opt);
          if (!part) {
            hi = mid;
            continue;
          }
          const double gm = level_gap(part->x);
          if (std::fabs(gm) < best_gap) {
            best_gap = std::fabs(gm);
            best = part->x;
          }
          if (gm * g0 > 0) lo = mid;
          else hi = mid;
          if (hi - lo < 1e-18) break;
        }
        x = best;
        tau += 0.5 * (lo + hi);
        check_stratum();
        snapshot(h);
        traj.stop_reason = "level";
        return traj;
      }
    }

    x = trial->x;
    tau += h;
    ++accepted;
    if (opt.reproject_every > 0 && accepted % opt.reproject_every == 0) {
      try {
        x = field.reproject(x);
      } catch (const Error&) {
        // keep the unprojected point; drift is re-checked at the next attempt
      }
    }
    const double used = h;
    const double fac = trial->err > 0 ? std::min(5.0, 0.9 * std::pow(trial->err, -0.2)) : 5.0;
    h = std::min(opt.h_max, h * fac);

    const bool snap = opt.snapshot_every > 0 && accepted % opt.snapshot_every == 0;
    if (snap) {
      check_stratum();
      snapshot(used);
    }

    bool done = false;
    if (stop.kind == StopRule::Kind::Converge && converged()) {
      traj.stop_reason = "converged";
      done = true;
    } else if (stop.kind == StopRule::Kind::Time && tau >= stop.duration) {
      traj.stop_reason = "time";
      done = true;
    }
    if (done) {
      if (!snap) {
        check_stratum();
        snapshot(used);
      }
      return traj;
    }
  }
}

/// Convenience overload: the base point is pi_u(x0).
inline Trajectory flow(const FloatMatrix& x0, const Permutation& u, Direction dir,
                       const StopRule& stop, const FlowOptions& opt = {}) {
  return flow(FlowField(u, pi_u(x0, u)), x0, dir, stop, opt);
}

/// The point where the trajectory through x meets str = str(x_u) + epsilon.
inline FloatMatrix link_point(const FlowField& field, const FloatMatrix& x, double epsilon,
                              FlowOptions opt = {}) {
  const double target = field.base_str() + epsilon;
  const double gap = str(x) - target;
  if (std::fabs(gap) <= 1e-9) return x;
  opt.snapshot_every = 0;
  auto traj = flow(field, x, gap < 0 ? Direction::Forward : Direction::Backward,
                   StopRule::at_level(target), opt);
  return traj.final().point;
}

/// link_point with the interval precondition: the label of x lies in (u, v].
inline FloatMatrix link_point(const FloatMatrix& x, const Permutation& u, const Permutation& v,
                              double epsilon, FlowOptions opt = {}) {
  FlowField field(u, pi_u(x, u));
  const auto w = opt.stratum ? *opt.stratum : detail::label_or_throw(x, opt.stratum_tol);
  if (w == u || !bruhat_leq(u, w) || !bruhat_leq(w, v))
    throw Error(Errc::NotComparable, "point label " + w.to_string() + " is not in (" +
                                         u.to_string() + ", " + v.to_string() + "]");
  opt.stratum = w;
  return link_point(field, x, epsilon, opt);
}

// ------------------------------------------------------------ links

struct LinkPoint {
  FloatMatrix point;
  Permutation stratum;
};

struct StratumInfo {
  Permutation w;
  int dimension = 0;  // l(w) - l(u) - 1
  int count = 0;
};

struct LinkSample {
  Permutation u, v;
  Rat epsilon;
  RatMatrix base;
  std::vector<LinkPoint> points;
  std::vector<StratumInfo> strata;

  /// Combinatorial Euler characteristic sum_w (-1)^{dim}.
  long euler_characteristic() const {
    long chi = 0;
    for (const auto& s : strata) chi += (s.dimension % 2 == 0) ? 1 : -1;
    return chi;
  }
};

/// Samples `count` points of each stratum of L_epsilon(u, v): random
/// Lusztig points of Y°_w, moved into the fiber over the standard base
/// point by rho (exactly), then flowed to the epsilon level set.
inline LinkSample link_sample(const Permutation& u, const Permutation& v, const Rat& epsilon,
                              int count, std::uint64_t seed, FlowOptions opt = {}) {
  if (u == v || !bruhat_leq(u, v))
    throw Error(Errc::NotComparable, "link_sample needs u < v");
  if (sgn(epsilon) <= 0) throw Error(Errc::NonPositiveParameter, "epsilon must be positive");
  LinkSample out{u, v, epsilon, standard_base_point(u), {}, {}};
  FlowField field(u, to_float(out.base));
  const double eps = epsilon.get_d();
  const auto iv = interval(u, v);
  for (const auto& w : iv.elements) {
    if (w == u) continue;
    StratumInfo info{w, w.length() - u.length() - 1, 0};
    // seeds depend on (seed, w) only, so strata agree across intervals and epsilons
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(std::hash<std::string>{}(w.to_string()))));
    for (int c = 0; c < count; ++c) {
      const auto xt = random_cell_point(rng, w);
      const auto moved = rho(xt, out.base, u);
      if (cell_of(moved) != w)
        throw Error(Errc::InternalInvariant, "rho changed the cell of a sample");
      FlowOptions o = opt;
      o.stratum = w;
      auto p = link_point(field, to_float(moved), eps, o);
      if (!detail::on_stratum(p, w, opt))
        throw Error(Errc::StratumEscape, "link point of stratum " + w.to_string() +
                                             " left its stratum");
      out.points.push_back({std::move(p), w});
      ++info.count;
    }
    out.strata.push_back(info);
  }
  return out;
}

/// R_{u,v}(x, tau) = lambda(rho_{x_u}(pi_v(d(tau) z d(tau)^{-1} d(1-tau) x d(1-tau)^{-1}))).
/// The link is taken over the standard base point of Y°_u. At tau = 0 the
/// value is x, the limit of the formula as tau -> 0+; the formula itself
/// needs x in Y_{>=v} there, which fails on lower strata.
inline FloatMatrix retraction(const FloatMatrix& x, double tau, const Permutation& u,
                              const Permutation& v, const RatMatrix& z, double epsilon,
                              const FlowOptions& opt = {}) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw Error(Errc::NonPositiveTau, "tau must lie in [0,1]");
  if (!in_Y_geq_u(z, v))
    throw Error(Errc::ZNotInYgeqV, "z is not in Y_{>=" + v.to_string() + "}");
  FlowField field(u, to_float(standard_base_point(u)));
  if (max_abs_diff(pi_u(x, u), field.base) > 1e-6)
    throw Error(Errc::CellMismatch, "x is not on the fiber over the standard base point");
  if (tau == 0.0) return x;
  const int n = x.n();
  // d(s) y d(s)^{-1} for unipotent y tends to the identity as s -> 0
  auto scaled = [&](double s, const FloatMatrix& y) {
    return s > 0 ? conj_d(s, y) : FloatMatrix::identity(n);
  };
  const FloatMatrix p = scaled(tau, to_float(z)) * scaled(1.0 - tau, x);
  const FloatMatrix top = pi_u(p, v);
  const FloatMatrix moved = rho(top, field.base, u);
  FlowOptions o = opt;
  o.stratum = v;
  // near tau = 0 the image hugs the boundary of Y°_v, where numerical labels are unreliable
  o.check_stratum = false;
  return link_point(field, moved, epsilon, o);
}

}  // namespace tnn
