#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <tuple>

#include "paradv/adversary.hpp"
#include "paradv/error.hpp"
#include "paradv/kernels.hpp"
#include "paradv/model.hpp"
#include "paradv/report.hpp"
#include "paradv/simulator.hpp"

namespace paradv::cli {

namespace {

std::string fixed9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << content;
}

unsigned parse_unsigned(const std::string& s) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::InvalidArgument, "cannot parse '" + s + "' as a non-negative integer");
  return v;
}

// "1,2,4", "1..4" or a mix such as "1..3,8".
std::vector<unsigned> parse_uint_list(const std::string& text) {
  std::vector<unsigned> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    const auto dots = tok.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_unsigned(tok));
    } else {
      const unsigned lo = parse_unsigned(tok.substr(0, dots));
      const unsigned hi = parse_unsigned(tok.substr(dots + 2));
      for (unsigned v = lo; v <= hi; ++v) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (!tok.empty()) out.push_back(Rational::parse(tok));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct BoundArgs {
  unsigned n = 0, k = 0, p = 1;
  std::string eps, mode = "all", out;
  std::size_t max_dim = 4096;
};

int cmd_bound(const BoundArgs& a, std::ostream& out) {
  BoundOptions opts;
  opts.mode = bound_mode_from_string(a.mode);
  opts.max_spectral_dim = a.max_dim;
  const auto rep = compute_bound_report(a.n, a.k, Rational::parse(a.eps), a.p, opts);
  out << render_text(rep);
  if (!a.out.empty()) write_file(a.out, dump_document(to_json(rep)));
  return 0;
}

struct SweepArgs {
  std::string n, k, eps, p, out;
  std::size_t max_dim = 1024;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  struct Point {
    unsigned n, k;
    Rational eps;
    unsigned p;
  };
  std::vector<Point> points;
  for (unsigned n : parse_uint_list(a.n))
    for (unsigned k : parse_uint_list(a.k))
      for (const Rational& e : parse_rational_list(a.eps))
        for (unsigned p : parse_uint_list(a.p)) points.push_back({n, k, e, p});

  std::vector<std::optional<SweepRow>> rows(points.size());
  std::vector<std::string> skipped(points.size());
  BoundOptions opts;
  opts.max_spectral_dim = a.max_dim;
  const auto count = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    const Point& pt = points[i];
    try {
      rows[i] = flatten(compute_bound_report(pt.n, pt.k, pt.eps, pt.p, opts));
    } catch (const Error& e) {
      skipped[i] = e.what();
    }
  }

  std::vector<SweepRow> valid;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (rows[i]) {
      valid.push_back(*rows[i]);
    } else {
      err << "skip n=" << points[i].n << " K=" << points[i].k << " eps=" << points[i].eps.str()
          << " p=" << points[i].p << ": " << skipped[i] << "\n";
    }
  }
  if (valid.empty()) {
    err << "error: sweep has no valid parameter points\n";
    return 2;
  }
  const std::string csv = to_csv(valid);
  if (a.out.empty()) out << csv;
  else {
    write_file(a.out, csv);
    out << "wrote " << valid.size() << " rows to " << a.out << "\n";
  }
  return 0;
}

struct GroverArgs {
  unsigned n = 0, iters = 0;
  std::vector<unsigned> marked;
  std::string out;
};

int cmd_grover(const GroverArgs& a, std::ostream& out) {
  const double success = grover_success(a.n, a.marked, a.iters);
  out << "success=" << fixed9(success) << "\n";
  if (!a.out.empty()) {
    nlohmann::json rec{{"kind", "grover"},
                       {"n", a.n},
                       {"marked", a.marked},
                       {"iterations", a.iters},
                       {"success", round_significant(success)}};
    write_file(a.out, dump_document(rec));
  }
  return 0;
}

struct CountArgs {
  unsigned n = 0, k = 0, tbits = 0, p = 1, trials = 10000;
  std::uint64_t seed = 0;
  std::string eps = "1/1", out;
};

int cmd_count(const CountArgs& a, std::ostream& out) {
  const CountingSpec spec(a.n, Rational::parse(a.eps));
  const auto est = phase_estimation_count(spec, a.k, a.tbits);
  out << "khat=" << est.khat_mode << " p=" << fixed9(est.khat_mode_prob) << " queries=" << est.queries << "\n";
  out << "success=" << fixed9(est.success_prob) << " eps=" << spec.epsilon.str() << "\n";
  if (!a.out.empty()) {
    auto rec = to_json(est);
    rec["kind"] = "count";
    rec["eps"] = spec.epsilon.str();
    write_file(a.out, dump_document(rec));
  }
  return 0;
}

int cmd_pcount(const CountArgs& a, std::ostream& out) {
  const CountingSpec spec(a.n, Rational::parse(a.eps));
  const auto r = parallel_disjoint_counters(spec, a.k, a.p, a.tbits, a.seed, a.trials);
  std::uint64_t mode = 0;
  double mode_p = -1.0;
  for (const auto& [v, pv] : r.combined_distribution) {
    if (pv > mode_p) {
      mode = v;
      mode_p = pv;
    }
  }
  out << "khat=" << mode << " p=" << fixed9(mode_p) << " depth=" << r.depth << " total_queries=" << r.total_queries
      << "\n";
  out << "exact_success=" << fixed9(r.exact_success) << " empirical_success=" << fixed9(r.empirical_success)
      << " variance=" << fixed9(r.empirical_variance) << " trials=" << r.trials << " seed=" << r.seed << "\n";
  if (!a.out.empty()) {
    auto rec = to_json(r);
    rec["kind"] = "pcount";
    rec["N"] = spec.N();
    rec["K"] = a.k;
    rec["eps"] = spec.epsilon.str();
    write_file(a.out, dump_document(rec));
  }
  return 0;
}

struct ProgressArgs {
  unsigned n = 0, k = 0, p = 1, rounds = 1, workspace = 1, index = 0;
  std::uint64_t seed = 0;
  std::string eps = "1/1", schedule = "random", out;
  double error_budget = kDefaultErrorBudget;
};

int cmd_progress(const ProgressArgs& a, std::ostream& out) {
  const auto inst = build_counting_instance(a.n, a.k, Rational::parse(a.eps));
  const auto gamma = counting_adversary(inst);
  Schedule sch;
  if (a.schedule == "random") {
    sch = random_schedule(RegisterLayout{a.n, a.p, a.workspace}, a.rounds, a.seed);
  } else if (a.schedule == "probe") {
    sch = bit_probe_schedule(a.n, a.index);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown schedule '" + a.schedule + "'");
  }
  const auto trace = progress_trace(gamma, sch);
  const auto overlap = final_overlap_check(gamma, sch, a.error_budget);
  const double max_delta = trace.deltas.empty() ? 0.0 : *std::max_element(trace.deltas.begin(), trace.deltas.end());
  out << "W0=" << fixed9(trace.W.front()) << " WT=" << fixed9(trace.W.back()) << " max_delta=" << fixed9(max_delta)
      << " step_bound=" << fixed9(trace.step_bound) << " step_bound_ok=" << (trace.step_bound_ok ? "true" : "false")
      << "\n";
  out << "observed_constant=" << fixed9(trace.observed_constant)
      << " overlap_threshold=" << fixed9(overlap.threshold)
      << " all_distinguishable=" << (overlap.all_distinguishable ? "true" : "false") << "\n";
  if (!a.out.empty()) {
    nlohmann::json rec{{"kind", "progress"},
                       {"instance", {{"n", a.n}, {"K", a.k}, {"eps", inst.spec.epsilon.str()}}},
                       {"trace", to_json(trace, sch)},
                       {"final_overlap", to_json(overlap)}};
    write_file(a.out, dump_document(rec));
  }
  return 0;
}

}  // namespace

int configure_workers() {
  if (const char* env = std::getenv(kThreadsVariable)) {
    int v = 0;
    const std::string s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) kernels::set_worker_count(v);
  }
  return kernels::worker_count();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parallel adversary bounds for approximate counting: bounds, simulations, sweeps", "paradv"};
  app.require_subcommand(1);

  BoundArgs bound;
  auto* b = app.add_subcommand("bound", "Spectral and combinatorial lower bounds for one counting instance");
  b->add_option("--n", bound.n, "Oracle size exponent, N = 2^n")->required();
  b->add_option("--k", bound.k, "Weight K of the lighter input class")->required();
  b->add_option("--eps", bound.eps, "Relative gap as an exact rational a/b")->required();
  b->add_option("--p", bound.p, "Parallel queries per round")->required();
  b->add_option("--mode", bound.mode, "combinatorial | spectral | all")->capture_default_str();
  b->add_option("--out", bound.out, "Write the machine-readable report here");
  b->add_option("--max-spectral-dim", bound.max_dim, "Skip the eigensolver above this dimension")
      ->capture_default_str();

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "Bound table over parameter ranges (CSV)");
  s->add_option("--n", sweep.n, "List or range, e.g. 2,3 or 2..4")->required();
  s->add_option("--k", sweep.k, "List or range of K")->required();
  s->add_option("--eps", sweep.eps, "Comma-separated rationals a/b")->required();
  s->add_option("--p", sweep.p, "List or range of p")->required();
  s->add_option("--out", sweep.out, "CSV output path (stdout when omitted)");
  s->add_option("--max-spectral-dim", sweep.max_dim, "Report thm1_ratio as NA above this dimension")
      ->capture_default_str();

  auto* sim = app.add_subcommand("simulate", "Exact statevector experiments");
  sim->require_subcommand(1);

  GroverArgs grover;
  auto* g = sim->add_subcommand("grover", "Grover search success probability");
  g->add_option("--n", grover.n)->required();
  g->add_option("--marked", grover.marked, "Marked indices")->delimiter(',')->required();
  g->add_option("--iters", grover.iters)->required();
  g->add_option("--out", grover.out);

  CountArgs count;
  auto* c = sim->add_subcommand("count", "Phase-estimation approximate counting");
  c->add_option("--n", count.n)->required();
  c->add_option("--k", count.k)->required();
  c->add_option("--tbits", count.tbits)->required();
  c->add_option("--eps", count.eps, "Acceptance window parameter a/b")->capture_default_str();
  c->add_option("--out", count.out);

  CountArgs pcount;
  auto* pc = sim->add_subcommand("pcount", "p disjoint parallel counters");
  pc->add_option("--n", pcount.n)->required();
  pc->add_option("--k", pcount.k)->required();
  pc->add_option("--p", pcount.p)->required();
  pc->add_option("--tbits", pcount.tbits, "Precision bits per block")->required();
  pc->add_option("--eps", pcount.eps)->capture_default_str();
  pc->add_option("--seed", pcount.seed)->capture_default_str();
  pc->add_option("--trials", pcount.trials)->capture_default_str();
  pc->add_option("--out", pcount.out);

  ProgressArgs progress;
  auto* pr = sim->add_subcommand("progress", "Progress measure W^t on the counting adversary matrix");
  pr->add_option("--n", progress.n)->required();
  pr->add_option("--k", progress.k)->required();
  pr->add_option("--eps", progress.eps)->capture_default_str();
  pr->add_option("--p", progress.p)->capture_default_str();
  pr->add_option("--T", progress.rounds, "Oracle rounds")->capture_default_str();
  pr->add_option("--seed", progress.seed)->capture_default_str();
  pr->add_option("--workspace", progress.workspace)->capture_default_str();
  pr->add_option("--schedule", progress.schedule, "random | probe")->capture_default_str();
  pr->add_option("--index", progress.index, "Probed index for --schedule probe")->capture_default_str();
  pr->add_option("--error-budget", progress.error_budget)->capture_default_str();
  pr->add_option("--out", progress.out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (b->parsed()) return cmd_bound(bound, out);
    if (s->parsed()) return cmd_sweep(sweep, out, err);
    if (g->parsed()) return cmd_grover(grover, out);
    if (c->parsed()) return cmd_count(count, out);
    if (pc->parsed()) return cmd_pcount(pcount, out);
    if (pr->parsed()) return cmd_progress(progress, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace paradv::cli
