// tnn-strata: command-line front end to the tnn library.
//
// Exit codes: 0 success, 1 invariant failure, 2 usage error,
// 3 mathematical precondition not met.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "tnn/commands.hpp"

namespace {

using namespace tnn;

enum Exit { kOk = 0, kInvariant = 1, kUsage = 2, kPrecondition = 3 };

int exit_code_for(Errc c) {
  if (is_usage_error(c)) return kUsage;
  switch (c) {
    case Errc::InternalInvariant:
    case Errc::StratumEscape:
    case Errc::StepUnderflow:
    case Errc::MaxStepsExceeded:
      return kInvariant;
    default:
      return kPrecondition;
  }
}

std::string read_all(std::istream& is) {
  return std::string(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::Parse, "cannot open " + path);
  return read_all(f);
}

/// Matrix from --in PATH, or from stdin when no path is given.
RatMatrix read_matrix(const std::string& path) {
  return parse_matrix(path.empty() ? read_all(std::cin) : read_file(path));
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

struct Options {
  int n = 3;
  std::uint64_t seed = 1;
  std::string epsilon = "1";
  double tol = 1e-9;
  long max_steps = 200000;
  int samples = 0;  // 0: the verb's default
  int snapshot_every = 1;
  bool json_out = false;
  bool timing = false;
  std::string in, u, v, word, params, base, direction = "forward", dump;
  double tau = 0, time = 1, level = 0;
  bool has_level = false;
  std::string suite;
};

Permutation perm_flag(const std::string& text, const char* name) {
  if (text.empty()) throw Error(Errc::Parse, std::string("--") + name + " is required");
  return Permutation::parse(text);
}

FlowOptions flow_options(const Options& o) {
  FlowOptions f;
  f.max_steps = o.max_steps;
  f.snapshot_every = o.snapshot_every;
  return f;
}

int run_param(const Options& o) {
  const int n = o.n;
  emit(cmd_param(parse_word(o.word, n), parse_rat_list(o.params)));
  return kOk;
}

int run_flow(const Options& o) {
  const auto u = perm_flag(o.u, "u");
  const auto x0 = read_matrix(o.in);
  require_rank(x0, u);
  if (!in_Y_geq_u(x0, u))
    throw Error(Errc::NotInG0u, "initial point is not in Y_{>=" + u.to_string() + "}");
  FlowField field(u, to_float(pi_u(x0, u)));
  StopRule stop;
  Direction dir;
  if (o.direction == "backward") {
    dir = Direction::Backward;
    stop = StopRule::converge();
  } else if (o.direction == "forward") {
    dir = Direction::Forward;
    stop = o.has_level ? StopRule::at_level(o.level) : StopRule::for_time(o.time);
  } else {
    throw Error(Errc::Parse, "--direction must be forward or backward");
  }
  if (o.has_level && dir == Direction::Backward) stop = StopRule::at_level(o.level);
  const auto traj = flow(field, to_float(x0), dir, stop, flow_options(o));
  if (!o.dump.empty()) {
    std::ofstream f(o.dump);
    if (!f) throw Error(Errc::Parse, "cannot write " + o.dump);
    write_trajectory_jsonl(f, traj);
  }
  // invariants: str is monotone along the flow, and the stratum is kept
  bool monotone = true;
  for (std::size_t k = 1; k < traj.states.size(); ++k) {
    const double d = traj.states[k].str_value - traj.states[k - 1].str_value;
    if (dir == Direction::Forward ? d < 0 : d > 0) monotone = false;
  }
  const double dist = max_abs_diff(traj.final().point, field.base);
  const bool converged_ok = dir == Direction::Forward || o.has_level || dist < 1e-6;
  emit(json{{"u", u.to_string()},
            {"direction", o.direction},
            {"stratum", traj.final().stratum.to_string()},
            {"stop_reason", traj.stop_reason},
            {"steps", traj.steps},
            {"rejected", traj.rejected},
            {"snapshots", traj.states.size()},
            {"base", matrix_to_json(field.base)},
            {"final", flow_state_to_json(traj.final())},
            {"distance_to_base", dist},
            {"str_monotone", monotone},
            {"passed", monotone && converged_ok}});
  return monotone && converged_ok ? kOk : kInvariant;
}

int run_link_sample(const Options& o) {
  const auto u = perm_flag(o.u, "u"), v = perm_flag(o.v, "v");
  const int per = o.samples > 0 ? o.samples : 2;
  const auto s = link_sample(u, v, parse_rat(o.epsilon), per, o.seed, flow_options(o));
  emit(link_sample_to_json(s));
  return s.euler_characteristic() == 1 ? kOk : kInvariant;
}

int run_retract(const Options& o) {
  const auto u = perm_flag(o.u, "u"), v = perm_flag(o.v, "v");
  const int per = o.samples > 0 ? o.samples : 1;
  const Rat eps = parse_rat(o.epsilon);
  const auto s = link_sample(u, v, eps, per, o.seed, flow_options(o));
  const auto z = standard_base_point(v);
  json images = json::array();
  FloatMatrix first;
  double spread = 0;
  for (const auto& p : s.points) {
    const auto r = retraction(p.point, o.tau, u, v, z, eps.get_d(), flow_options(o));
    if (first.n() == 0) first = r;
    else spread = std::max(spread, max_abs_diff(r, first));
    json j = matrix_to_json(r);
    j["from_stratum"] = p.stratum.to_string();
    j["distance_moved"] = max_abs_diff(r, p.point);
    images.push_back(std::move(j));
  }
  // at tau = 1 every point must land on the same image
  const bool ok = o.tau < 1.0 || spread < 1e-6;
  emit(json{{"u", u.to_string()},
            {"v", v.to_string()},
            {"tau", o.tau},
            {"epsilon", to_string(eps)},
            {"z", matrix_to_json(z)},
            {"images", std::move(images)},
            {"image_spread", spread},
            {"passed", ok}});
  return ok ? kOk : kInvariant;
}

int run_link_census(const Options& o) {
  const auto u = perm_flag(o.u, "u"), v = perm_flag(o.v, "v");
  const auto c =
      cmd_link_census(u, v, parse_rat(o.epsilon), o.samples > 0 ? o.samples : 1, o.seed);
  if (o.json_out) {
    emit(c.report);
  } else {
    std::cout << "L(" << u.to_string() << " ; " << v.to_string() << ")  epsilon "
              << c.report["epsilon"].get<std::string>() << '\n';
    for (const auto& s : c.report["strata"])
      std::cout << "  w = " << s["w"].get<std::string>() << "  dim " << s["dimension"].get<int>()
                << "  sampled " << s["count"].get<int>() << '\n';
    std::cout << "euler characteristic " << c.report["euler_characteristic"].get<long>()
              << (c.ok ? "  PASS" : "  FAIL") << '\n';
  }
  return c.ok ? kOk : kInvariant;
}

int run_verify(const Options& o) {
  RunConfig cfg;
  cfg.n = o.n;
  cfg.seed = o.seed;
  cfg.epsilon = parse_rat(o.epsilon).get_d();
  cfg.tol = o.tol;
  cfg.max_steps = o.max_steps;
  cfg.samples = o.samples > 0 ? o.samples : 100;
  const auto reports = cmd_verify(o.suite, cfg);
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed();
  if (o.json_out) {
    json all = json::array();
    for (const auto& r : reports) all.push_back(r.to_json(o.timing));
    emit(json{{"passed", ok}, {"reports", std::move(all)}});
  } else {
    for (const auto& r : reports) {
      std::cout << (r.passed() ? "PASS " : "FAIL ") << r.suite << "  n=" << cfg.n
                << "  cases=" << r.cases << "  failures=" << r.failures.size();
      if (!r.summary.empty()) std::cout << "  " << r.summary.dump();
      if (o.timing) std::cout << "  wall=" << r.wall_seconds << "s";
      std::cout << '\n';
      for (const auto& f : r.failures)
        std::cout << "  " << f.key << ": " << f.message << "\n    repro: " << f.repro << '\n';
    }
  }
  return ok ? kOk : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Totally nonnegative unipotent matrices: cells, fibrations, flows and links"};
  app.require_subcommand(1);
  Options o;

  auto add_in = [&](CLI::App* c) {
    c->add_option("--in", o.in, "matrix JSON file (default: stdin)");
  };
  auto add_run = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "random seed");
    c->add_option("--epsilon", o.epsilon, "link level above str(x_u), rational");
    c->add_option("--max-steps", o.max_steps, "integrator step limit");
    c->add_option("--samples", o.samples, "samples (per stratum for link verbs)");
    c->add_option("--snapshot-every", o.snapshot_every, "record every k-th accepted step");
    c->add_option("--tol", o.tol, "numerical tolerance");
  };

  auto* param = app.add_subcommand("param", "Lusztig point x_{i1}(t1)...x_{il}(tl)");
  param->add_option("--n", o.n, "rank")->required();
  param->add_option("--word", o.word, "reduced word, e.g. s1.s2.s1")->required();
  param->add_option("--params", o.params, "positive parameters, e.g. 1,2,1/2");

  auto* cell = app.add_subcommand("cell-of", "Bruhat cell of a matrix in N");
  add_in(cell);
  auto* tnn_cmd = app.add_subcommand("tnn", "total nonnegativity test (all minors)");
  add_in(tnn_cmd);

  auto* project = app.add_subcommand("project", "pi_u(x)");
  add_in(project);
  project->add_option("--u", o.u, "one-line permutation")->required();

  auto* rho_cmd = app.add_subcommand("rho", "move x into the fiber of pi_u over --base");
  add_in(rho_cmd);
  rho_cmd->add_option("--u", o.u, "one-line permutation")->required();
  rho_cmd->add_option("--base", o.base, "matrix JSON file of a point of N^u")->required();

  auto* psi_cmd = app.add_subcommand("psi", "the vector field psi at x");
  add_in(psi_cmd);
  psi_cmd->add_option("--u", o.u, "one-line permutation")->required();

  auto* flow_cmd = app.add_subcommand("flow", "integrate psi on the fiber of pi_u through x");
  add_in(flow_cmd);
  add_run(flow_cmd);
  flow_cmd->add_option("--u", o.u, "one-line permutation")->required();
  flow_cmd->add_option("--direction", o.direction, "forward or backward");
  flow_cmd->add_option("--time", o.time, "forward integration time");
  flow_cmd->add_option("--level", o.level, "stop on this absolute str level");
  flow_cmd->add_option("--dump-trajectory", o.dump, "write JSON-lines snapshots to this file");

  auto* link = app.add_subcommand("link-sample", "sample points of L_eps(u, v) in every stratum");
  add_run(link);
  link->add_option("--u", o.u)->required();
  link->add_option("--v", o.v)->required();

  auto* retract = app.add_subcommand("retract", "apply R(., tau) to sampled link points");
  add_run(retract);
  retract->add_option("--u", o.u)->required();
  retract->add_option("--v", o.v)->required();
  retract->add_option("--tau", o.tau, "homotopy parameter in [0,1]")->required();

  auto* census = app.add_subcommand("link-census", "strata of L_eps(u, v) and Euler characteristic");
  add_run(census);
  census->add_option("--u", o.u)->required();
  census->add_option("--v", o.v)->required();
  census->add_flag("--json", o.json_out, "machine-readable output");

  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  add_run(verify);
  verify->add_option("suite", o.suite, "suite name or 'all'")->required();
  verify->add_option("--n", o.n, "rank");
  verify->add_flag("--json", o.json_out, "machine-readable output");
  verify->add_flag("--timing", o.timing, "include wall time (output no longer byte-stable)");

  // data verbs always print JSON; --json is accepted for uniformity
  for (auto* c : {param, cell, tnn_cmd, project, rho_cmd, psi_cmd, flow_cmd, link, retract})
    c->add_flag("--json", o.json_out, "machine-readable output (always on for this verb)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (flow_cmd->parsed()) o.has_level = flow_cmd->count("--level") > 0;
    if (*param) return run_param(o);
    if (*cell) return emit(cmd_cell_of(read_matrix(o.in))), kOk;
    if (*tnn_cmd) return emit(cmd_tnn(read_matrix(o.in))), kOk;
    if (*project) return emit(cmd_project(read_matrix(o.in), perm_flag(o.u, "u"))), kOk;
    if (*rho_cmd) {
      const auto base = parse_matrix(read_file(o.base));
      return emit(cmd_rho(read_matrix(o.in), base, perm_flag(o.u, "u"))), kOk;
    }
    if (*psi_cmd) return emit(cmd_psi(read_matrix(o.in), perm_flag(o.u, "u"))), kOk;
    if (*flow_cmd) return run_flow(o);
    if (*link) return run_link_sample(o);
    if (*retract) return run_retract(o);
    if (*census) return run_link_census(o);
    if (*verify) return run_verify(o);
  } catch (const Error& e) {
    std::cerr << json{{"error", errc_name(e.code())}, {"message", e.what()}}.dump() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return kInvariant;
  }
  return kUsage;
}
