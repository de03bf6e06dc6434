// Copyright 2026 The wincc Authors
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

#include "wincc/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "wincc/benchgen.hpp"
#include "wincc/constraints.hpp"
#include "wincc/errors.hpp"
#include "wincc/game.hpp"
#include "wincc/oracle.hpp"
#include "wincc/situation_graph.hpp"
#include "wincc/solver.hpp"

namespace wincc::cli {

namespace {

struct Common {
  std::string game;
  std::vector<std::string> constraints;
  bool verbose = false;
  bool quiet = false;
};

struct SolveArgs {
  Common common;
  std::optional<std::size_t> iterate_over;
  std::optional<unsigned> max_iterations;
  std::string strategy_out;
  std::string stats_out;
  std::string dot_out;
  std::string dump_out;
  std::optional<unsigned> verify_depth;
  bool oracle_check = false;
  bool timings = false;
};

struct ExportArgs {
  Common common;
  std::size_t iterate_over = 0;
  std::optional<unsigned> iteration_length;
  std::string out = "-";
};

struct GenerateArgs {
  std::string family = "grid";
  bench::BenchSpec spec;
  std::string out = "-";
};

struct CompareArgs {
  Common common;
  std::size_t iterate_over = 0;
  std::string report = "-";
  std::optional<std::size_t> arm_budget;
  bool skip_full = false;
  bool parallel = false;
  bool timings = true;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--game", c.game, "Game graph JSON file")->required();
  app->add_option("--constraint", c.constraints, "kind:action:k:l, repeatable")->required();
  app->add_flag("-v,--verbose", c.verbose, "Report construction progress");
  app->add_flag("-q,--quiet", c.quiet, "No progress output");
}

std::size_t env_budget() {
  const char* raw = std::getenv("SOLVER_MAX_SITUATIONS");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const auto v = std::strtoull(raw, &end, 10);
  if (*end != '\0') throw UsageError("SOLVER_MAX_SITUATIONS must be an integer");
  return static_cast<std::size_t>(v);
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) return;
  if (path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw IoError("failed writing '" + path + "'");
}

ConstraintSet load_constraints(const GameGraph& graph, const std::vector<std::string>& texts) {
  std::vector<CountingConstraint> list;
  for (const auto& t : texts) list.push_back(parse_constraint(t, graph));
  ConstraintSet cs(std::move(list));
  cs.check(graph);
  return cs;
}

BuildOptions build_options(const Common& c, std::ostream& err) {
  BuildOptions b;
  b.max_situations = env_budget();
  if (c.verbose && !c.quiet) {
    b.progress = [&err](std::size_t built, std::size_t frontier) {
      err << "  built " << built << " situations, frontier " << frontier << "\n";
    };
  }
  return b;
}

SolveOptions solve_options(const Common& c, std::ostream& err) {
  SolveOptions o;
  o.build = build_options(c, err);
  if (!c.quiet) {
    o.on_iteration = [&err](const IterationStats& s) {
      err << "iteration c=" << s.window_length << ": " << s.situations << " situations, "
          << s.winnable_marked + s.losing_marked << " marked, " << s.winning << " winning\n";
    };
  }
  return o;
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::Win: return ExitCode::Win;
    case Verdict::Lose: return ExitCode::Lose;
    case Verdict::Inconclusive: return ExitCode::Inconclusive;
  }
  return ExitCode::Software;
}

int oracle_check(const GameGraph& graph, const ConstraintSet& cs, std::ostream& out,
                 std::ostream& err) {
  oracle::OracleConfig config;
  config.max_states = graph.state_count();
  config.max_window = 32;
  config.max_depth = 128;
  if (const auto budget = env_budget(); budget > 0) config.max_situations = budget;
  const auto a = oracle::triple_agreement(graph, cs, config);
  out << "solver=" << (a.solver_wins ? "win" : "lose")
      << " oracle=" << (a.oracle_wins ? "win" : "lose")
      << " enumeration=" << (a.enumeration_wins ? "win" : "lose") << " depth=" << a.depth
      << (a.agree() ? " agree" : " DISAGREE") << "\n";
  if (!a.agree()) {
    err << "oracle disagreement\n";
    return ExitCode::Disagreement;
  }
  return ExitCode::Win;
}

int do_solve(const SolveArgs& a, bool direct, std::ostream& out, std::ostream& err) {
  const auto graph = load_game(a.common.game);
  const auto cs = load_constraints(graph, a.common.constraints);
  auto options = solve_options(a.common, err);
  options.max_iterations = a.max_iterations;

  SolveReport report;
  ConstraintSet final_cs = cs;
  if (direct) {
    report = solve_direct(graph, cs, options);
  } else {
    if (*a.iterate_over >= cs.size()) throw UsageError("--iterate-over is out of range");
    report = iterate(graph, cs, *a.iterate_over, options);
    if (report.final_window) final_cs = cs.with_window(*a.iterate_over, *report.final_window);
  }

  out << "verdict " << to_string(report.verdict);
  if (report.final_window) out << " window " << *report.final_window;
  out << "\n";
  if (!a.common.quiet) {
    err << "peak " << report.peak_situations() << " situations, total "
        << report.total_situations() << "\n";
  }

  write_output(a.stats_out, report_to_json(report, a.timings), out);
  if (report.strategy) write_output(a.strategy_out, strategy_to_json(*report.strategy, graph), out);
  if (report.final_graph) {
    std::vector<SituationId> highlight;
    if (report.final_region) highlight = report.final_region->winning_ids();
    write_output(a.dot_out, to_dot(*report.final_graph, graph, highlight), out);
    write_output(a.dump_out, dump_situations(*report.final_graph, graph), out);
  }

  if (report.strategy) {
    unsigned max_l = 0;
    for (const auto& c : final_cs) max_l = std::max(max_l, c.l);
    const unsigned depth = a.verify_depth.value_or(4 * max_l);
    if (depth > 0) {
      if (!verify_strategy(graph, final_cs, *report.strategy, depth)) {
        err << "strategy verification failed at depth " << depth << "\n";
        return ExitCode::Software;
      }
      if (!a.common.quiet) err << "strategy verified to depth " << depth << "\n";
    }
  }
  if (a.oracle_check) {
    const int code = oracle_check(graph, cs, err, err);
    if (code != ExitCode::Win) return code;
  }
  return verdict_code(report.verdict);
}

int do_export(const ExportArgs& a, std::ostream& out, std::ostream& err) {
  const auto graph = load_game(a.common.game);
  const auto cs = load_constraints(graph, a.common.constraints);
  if (a.iterate_over >= cs.size()) throw UsageError("--iterate-over is out of range");
  const unsigned length = a.iteration_length.value_or(cs[a.iterate_over].l);
  const auto it = iteration_at(graph, cs, a.iterate_over, length, build_options(a.common, err));
  if (!a.common.quiet) {
    err << "iteration c=" << it.window_length << ": " << it.graph.size() << " situations, "
        << it.region.winning_count() << " winning\n";
  }
  const auto winning = it.region.winning_ids();
  write_output(a.out, to_dot(it.graph, graph, winning), out);
  return ExitCode::Win;
}

int do_generate(GenerateArgs a, std::ostream& out) {
  a.spec.family = bench::parse_family(a.family);
  write_output(a.out, serialize_game(bench::generate(a.spec)), out);
  return ExitCode::Win;
}

int do_compare(const CompareArgs& a, std::ostream& out, std::ostream& err) {
  const auto graph = load_game(a.common.game);
  const auto cs = load_constraints(graph, a.common.constraints);
  bench::CompareOptions o;
  o.arm_budget = a.arm_budget.value_or(env_budget());
  o.skip_full = a.skip_full;
  o.parallel = a.parallel;
  if (!a.common.quiet) err << "comparing on " << graph.state_count() << " game states\n";
  const auto report = bench::compare(graph, cs, a.iterate_over, o);
  write_output(a.report, bench::comparison_to_json(report, a.timings), out);
  if (!a.common.quiet) {
    auto line = [&err](const bench::ArmResult& arm) {
      err << arm.name << " (l=" << arm.window << "): ";
      if (arm.budget_exceeded) {
        err << "budget exceeded\n";
        return;
      }
      err << (arm.verdict ? to_string(*arm.verdict) : "skipped") << ", peak "
          << arm.peak_situations << ", total " << arm.total_situations << ", " << arm.seconds
          << " s\n";
    };
    line(report.iterated);
    if (report.direct_at_final) line(*report.direct_at_final);
    line(report.direct_full);
  }
  if (!report.verdicts_agree) {
    err << report.note << "\n";
    return ExitCode::Disagreement;
  }
  return report.iterated.verdict ? verdict_code(*report.iterated.verdict) : ExitCode::Budget;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthesis of winning strategies for games with window counting constraints",
               "wincc"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Iterated synthesis over one constraint's window");
  add_common(solve_cmd, solve.common);
  solve_cmd->add_option("--iterate-over", solve.iterate_over, "Index of the iterated constraint")
      ->required();
  solve_cmd->add_option("--max-iterations", solve.max_iterations, "Stop with inconclusive after N iterations");

  SolveArgs direct;
  auto* direct_cmd = app.add_subcommand("direct", "Solve the unpruned graph at full window lengths");
  add_common(direct_cmd, direct.common);

  for (auto [cmd, a] : {std::pair{solve_cmd, &solve}, std::pair{direct_cmd, &direct}}) {
    cmd->add_option("--strategy-out", a->strategy_out, "Strategy JSON path ('-' for stdout)");
    cmd->add_option("--stats-out", a->stats_out, "Statistics JSON path ('-' for stdout)");
    cmd->add_option("--dot-out", a->dot_out, "DOT rendering of the final situation graph");
    cmd->add_option("--dump-situations", a->dump_out, "Situation listing of the final graph");
    cmd->add_option("--verify-depth", a->verify_depth, "Strategy check depth (default 4*l, 0 skips)");
    cmd->add_flag("--oracle-check", a->oracle_check, "Cross-check the verdict with the brute-force oracle");
    cmd->add_flag("--timings", a->timings, "Include wall times in the statistics");
  }

  Common oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "Triple agreement of solver and oracles");
  add_common(oracle_cmd, oracle_args);

  ExportArgs exp;
  auto* export_cmd = app.add_subcommand("export-dot", "DOT rendering of one iteration");
  add_common(export_cmd, exp.common);
  export_cmd->add_option("--iterate-over", exp.iterate_over, "Index of the iterated constraint");
  export_cmd->add_option("--iteration-length", exp.iteration_length, "Window length of the iteration");
  export_cmd->add_option("-o,--output", exp.out, "Output path ('-' for stdout)");

  auto* bench_cmd = app.add_subcommand("bench", "Benchmark instances and comparisons");
  bench_cmd->require_subcommand(1);

  GenerateArgs gen;
  auto* gen_cmd = bench_cmd->add_subcommand("generate", "Write a generated game graph");
  gen_cmd->add_option("--family", gen.family, "grid, random or cycle");
  gen_cmd->add_option("--width", gen.spec.width);
  gen_cmd->add_option("--height", gen.spec.height);
  gen_cmd->add_option("--chargers", gen.spec.chargers, "Randomly placed chargers");
  gen_cmd->add_option("--charger-spacing", gen.spec.charger_spacing, "Charger lattice spacing");
  gen_cmd->add_option("--bump-permille", gen.spec.bump_permille, "Share of bumpy cells");
  gen_cmd->add_option("--states", gen.spec.states);
  gen_cmd->add_option("--branching", gen.spec.branching);
  gen_cmd->add_option("--seed", gen.spec.seed);
  gen_cmd->add_option("-o,--output", gen.out, "Output path ('-' for stdout)");

  CompareArgs cmp;
  auto* cmp_cmd = bench_cmd->add_subcommand("compare", "Iterated against direct solving");
  add_common(cmp_cmd, cmp.common);
  cmp_cmd->add_option("--iterate-over", cmp.iterate_over, "Index of the iterated constraint");
  cmp_cmd->add_option("--report", cmp.report, "Report JSON path ('-' for stdout)");
  cmp_cmd->add_option("--arm-budget", cmp.arm_budget, "Situation budget per arm");
  cmp_cmd->add_flag("--skip-full", cmp.skip_full, "Skip the direct arm at full length");
  cmp_cmd->add_flag("--parallel", cmp.parallel, "Run the arms concurrently");
  cmp_cmd->add_flag("!--no-timings", cmp.timings, "Omit wall times from the report");

  try {
    std::vector<std::string> rest(args.rbegin(), args.rend());
    if (!rest.empty()) rest.pop_back();
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : ExitCode::Usage;
  }

  try {
    if (*solve_cmd) return do_solve(solve, false, out, err);
    if (*direct_cmd) return do_solve(direct, true, out, err);
    if (*oracle_cmd) {
      const auto graph = load_game(oracle_args.game);
      return oracle_check(graph, load_constraints(graph, oracle_args.constraints), out, err);
    }
    if (*export_cmd) return do_export(exp, out, err);
    if (*gen_cmd) return do_generate(gen, out);
    if (*cmp_cmd) return do_compare(cmp, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::Usage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::DataError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::DataError;
  } catch (const GenerationError& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::Usage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::Io;
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::Budget;
  } catch (const VerificationError& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::Software;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::Software;
  }
  return ExitCode::Usage;
}

}  // namespace wincc::cli
