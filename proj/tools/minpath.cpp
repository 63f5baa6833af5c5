// minpath command-line front end. Results go to stdout as JSON, logs to
// stderr. Exit status: 0 ok, 1 domain error, 2 usage or parse error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "minpath/bench.hpp"
#include "minpath/decomp.hpp"
#include "minpath/exact.hpp"
#include "minpath/gen.hpp"
#include "minpath/io.hpp"
#include "minpath/lp.hpp"
#include "minpath/planar.hpp"
#include "minpath/report.hpp"
#include "minpath/round.hpp"
#include "minpath/separator.hpp"
#include "minpath/validate.hpp"

using namespace minpath;

namespace {

Json envelope(const std::string& command) {
  Json out;
  out["schema"] = 1;
  out["command"] = command;
  return out;
}

void emit(const Json& j) { std::cout << j.dump(1) << "\n"; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::invalid_argument, "cannot write '" + path + "'");
  f << text;
}

int exit_code(ErrorCode c) { return c == ErrorCode::parse_error ? 2 : 1; }

/// Instances handed to the solvers must satisfy every invariant.
Instance load_valid(const std::string& path) {
  Instance in = load_instance(path);
  const auto report = validate(in);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw Error(ErrorCode::invalid_argument,
                "instance is invalid (" + std::to_string(report.violations.size()) + " violations, first: " + v.kind +
                    ": " + v.message + ")");
  }
  return in;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Min-color path approximation and exact baselines"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string weights_path;
  std::string report_path;
  std::string out_path;
  std::string dump_path;
  Config cfg;
  std::string strategy = "ball_carving";
  bool repair = false;
  int limit = 15;
  int pair = 0;
  double delta = 0.4;
  std::uint64_t seed = 0;

  auto* validate_cmd = app.add_subcommand("validate", "Check every instance invariant");
  validate_cmd->add_option("--instance", instance_path)->required();
  validate_cmd->add_option("--dump-dual", dump_path, "Write the dual graph as JSON");
  validate_cmd->add_option("--pair", pair, "Terminal pair defining crossing flags in the dual dump");

  std::vector<CLI::App*> solvers;
  for (const char* name : {"solve", "solve-steiner", "solve-prize"}) {
    auto* cmd = app.add_subcommand(name, "Approximate via LP rounding");
    cmd->add_option("--instance", instance_path)->required();
    cmd->add_option("--epsilon", cfg.epsilon, "Pre-rounding threshold; delta = 1/2 - epsilon");
    cmd->add_option("--tolerance,--tol", cfg.tolerance);
    cmd->add_option("--strategy", strategy)->check(CLI::IsMember({"ball_carving", "kpr_chop"}));
    cmd->add_option("--max-cuts", cfg.max_cuts);
    auto* strict = cmd->add_flag("--strict", "Fail when rounding misses a separator (default)");
    cmd->add_flag("--repair", repair, "Greedily add colors when rounding misses a separator")->excludes(strict);
    cmd->add_option("--report", report_path, "Write the result with timings to a file");
    solvers.push_back(cmd);
  }

  auto* sep_cmd = app.add_subcommand("separator", "Minimum-weight color separator");
  sep_cmd->add_option("--instance", instance_path)->required();
  sep_cmd->add_option("--weights", weights_path)->required();
  sep_cmd->add_option("--pair", pair);

  auto* lp_cmd = app.add_subcommand("lp", "Solve the hitting LP by cutting planes");
  lp_cmd->add_option("--instance", instance_path)->required();
  lp_cmd->add_option("--tol", cfg.tolerance);
  lp_cmd->add_option("--max-cuts", cfg.max_cuts);
  lp_cmd->add_option("--dump-cuts", dump_path);

  auto* exact_cmd = app.add_subcommand("exact", "Exact baselines for small instances");
  exact_cmd->require_subcommand(1);
  auto* exact_path = exact_cmd->add_subcommand("path", "Fewest colors on an s-t path");
  auto* exact_sep = exact_cmd->add_subcommand("separator", "Minimum-weight separator by enumeration");
  auto* exact_prize_cmd = exact_cmd->add_subcommand("prize", "Prize-collecting optimum");
  for (auto* cmd : {exact_path, exact_sep, exact_prize_cmd}) {
    cmd->add_option("--instance", instance_path)->required();
    cmd->add_option("--limit", limit);
  }
  exact_sep->add_option("--weights", weights_path);
  exact_sep->add_option("--pair", pair);

  auto* dec_cmd = app.add_subcommand("decompose", "Small-diameter decomposition of the color graph");
  dec_cmd->add_option("--instance", instance_path)->required();
  dec_cmd->add_option("--weights", weights_path)->required();
  dec_cmd->add_option("--delta", delta);
  dec_cmd->add_option("--strategy", strategy)->check(CLI::IsMember({"ball_carving", "kpr_chop"}));

  auto* gen_cmd = app.add_subcommand("gen", "Instance generators");
  gen_cmd->require_subcommand(1);
  auto* gen_grid_cmd = gen_cmd->add_subcommand("grid", "Grid with random obstacles");
  int width = 5, height = 5, obstacles = 3, obstacle_size = 4;
  gen_grid_cmd->add_option("--width", width);
  gen_grid_cmd->add_option("--height", height);
  gen_grid_cmd->add_option("--obstacles", obstacles);
  gen_grid_cmd->add_option("--size", obstacle_size);
  auto* gen_hard_cmd = gen_cmd->add_subcommand("hardness", "Diamond path from a random hypergraph");
  HardnessParams hp;
  hp.n = 8;
  std::optional<double> edge_p;
  bool connector = false;
  gen_hard_cmd->add_option("--n", hp.n);
  gen_hard_cmd->add_option("--r", hp.r);
  gen_hard_cmd->add_option("--alpha", hp.alpha);
  gen_hard_cmd->add_option("--beta", hp.beta);
  gen_hard_cmd->add_option("--k", hp.k);
  gen_hard_cmd->add_option("--p", edge_p, "Hyperedge probability (default n^(alpha - r + 1))");
  gen_hard_cmd->add_flag("--connector", connector, "Add the all-colors hub vertex");
  for (auto* cmd : {gen_grid_cmd, gen_hard_cmd}) {
    cmd->add_option("--seed", seed);
    cmd->add_option("--out", out_path, "Output file (stdout when absent)");
  }

  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite");
  std::string suite = "small";
  std::string csv_path;
  bench_cmd->add_option("--suite", suite)->check(CLI::IsMember({"small", "medium"}));
  bench_cmd->add_option("--seed", seed);
  bench_cmd->add_option("--csv", csv_path, "Also write a CSV table (with timings)");
  bench_cmd->add_option("--strategy", strategy)->check(CLI::IsMember({"ball_carving", "kpr_chop"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    cfg.strategy = parse_strategy(strategy);
    cfg.mode = repair ? Mode::repair : Mode::strict;
    const auto start = std::chrono::steady_clock::now();

    if (*validate_cmd) {
      const Instance in = load_instance(instance_path);
      const auto report = validate(in);
      Json out = envelope("validate");
      out["valid"] = report.ok();
      out["violations"] = to_json(report);
      emit(out);
      if (!dump_path.empty() && report.ok()) {
        const auto& tp = in.terminals.at(static_cast<std::size_t>(pair));
        const auto fl = faces(in.graph);
        const auto ref = reference_path(in.graph, tp.s, tp.t);
        write_file(dump_path, to_json(build_dual(in.graph, fl, ref)).dump(1) + "\n");
      }
      return report.ok() ? 0 : 1;
    }

    for (auto* cmd : solvers) {
      if (!*cmd) continue;
      const std::string name = cmd->get_name();
      const Instance in = load_valid(instance_path);
      const Solution sol = name == "solve-prize" ? solve_prize(in, cfg)
                           : name == "solve-steiner" ? solve_steiner(in, cfg)
                                                     : solve(in, cfg);
      Json out = envelope(name);
      out["epsilon"] = cfg.epsilon;
      out["strategy"] = to_string(cfg.strategy);
      out["mode"] = cfg.mode == Mode::strict ? "strict" : "repair";
      out["solution"] = to_json(sol);
      emit(out);
      if (!report_path.empty()) {
        out["timings"] = {{"total_ms", elapsed_ms(start)}};
        write_file(report_path, out.dump(1) + "\n");
      }
      return 0;
    }

    if (*sep_cmd) {
      const Instance in = load_instance(instance_path);
      const auto weights = parse_weights(read_file(weights_path));
      const auto& tp = in.terminals.at(static_cast<std::size_t>(pair));
      const auto res = min_color_separator(in.graph, weights, tp.s, tp.t);
      Json out = envelope("separator");
      out["pair"] = pair;
      out["separator"] = res ? to_json(*res) : Json(nullptr);
      emit(out);
      return 0;
    }

    if (*lp_cmd) {
      const Instance in = load_valid(instance_path);
      cfg.check();
      const LpState st = solve_hitting_lp(in, {cfg.tolerance, cfg.max_cuts});
      Json out = envelope("lp");
      out["lp"] = to_json(st);
      out["lower_bound"] = lp_lower_bound(st);
      emit(out);
      if (!dump_path.empty()) write_file(dump_path, cuts_to_json(st.constraints).dump(1) + "\n");
      return 0;
    }

    if (*exact_cmd) {
      const Instance in = load_instance(instance_path);
      Json out = envelope("exact");
      if (*exact_path) {
        out["problem"] = "path";
        out["result"] = to_json(exact_min_color_path(in, limit));
      } else if (*exact_sep) {
        out["problem"] = "separator";
        const auto weights = weights_path.empty() ? in.graph.weights() : parse_weights(read_file(weights_path));
        const auto& tp = in.terminals.at(static_cast<std::size_t>(pair));
        const auto res = exact_min_separator(in.graph, weights, tp.s, tp.t, limit);
        out["result"] = res ? to_json(*res) : Json(nullptr);
      } else {
        out["problem"] = "prize";
        out["result"] = to_json(exact_prize(in, limit));
      }
      emit(out);
      return 0;
    }

    if (*dec_cmd) {
      const Instance in = load_valid(instance_path);
      const auto weights = parse_weights(read_file(weights_path));
      if (static_cast<int>(weights.size()) != in.graph.num_colors) {
        throw Error(ErrorCode::invalid_argument, "expected one weight per color");
      }
      const auto dual = build_dual(in.graph, faces(in.graph));
      const auto cg = build_color_graph(dual, ColorSet::range(in.graph.num_colors), weights);
      const auto dec = decompose(cg, delta, cfg.strategy);
      Json out = envelope("decompose");
      out["strategy"] = to_string(cfg.strategy);
      out["decomposition"] = to_json(dec, cg);
      emit(out);
      return 0;
    }

    if (*gen_cmd) {
      Instance in;
      if (*gen_grid_cmd) {
        in = gen_grid(width, height, obstacles, obstacle_size, seed);
      } else {
        hp.check();
        const Hypergraph hg = gen_random_hypergraph(hp.n, edge_p.value_or(hp.p()), hp.r, seed);
        in = gen_diamond_hardness(hg, hp, seed + 1);
        if (connector) in = add_color_connector(in);
      }
      if (out_path.empty()) {
        std::cout << serialize_instance(in);
      } else {
        write_file(out_path, serialize_instance(in));
        Json out = envelope("gen");
        out["out"] = out_path;
        out["vertices"] = in.graph.num_vertices();
        out["colors"] = in.graph.num_colors;
        emit(out);
      }
      return 0;
    }

    if (*bench_cmd) {
      const auto rows = run_bench(bench_suite(suite, seed), cfg);
      Json out = envelope("bench");
      out["suite"] = suite;
      out["seed"] = seed;
      out["strategy"] = to_string(cfg.strategy);
      Json table = Json::array();
      std::map<std::string, int> histogram;
      for (const auto& r : rows) {
        table.push_back({{"instance", r.name},
                         {"vertices", r.vertices},
                         {"colors", r.colors},
                         {"opt", r.opt ? Json(*r.opt) : Json(nullptr)},
                         {"lp", r.lp},
                         {"alg", r.alg},
                         {"ratio", r.ratio},
                         {"lp_cuts", r.lp_cuts}});
        std::ostringstream bucket;
        bucket.precision(2);
        bucket << std::fixed << std::floor(r.ratio * 4.0) / 4.0;
        ++histogram[bucket.str()];
      }
      out["rows"] = std::move(table);
      out["ratio_histogram"] = histogram;
      emit(out);
      if (!csv_path.empty()) {
        std::ostringstream csv;
        csv << "instance,vertices,colors,opt,lp,alg,ratio,lp_cuts,ms\n";
        for (const auto& r : rows) {
          csv << r.name << ',' << r.vertices << ',' << r.colors << ',' << (r.opt ? std::to_string(*r.opt) : "") << ','
              << r.lp << ',' << r.alg << ',' << r.ratio << ',' << r.lp_cuts << ',' << r.millis << "\n";
        }
        write_file(csv_path, csv.str());
      }
      std::cerr << "bench: " << rows.size() << " instances in " << elapsed_ms(start) << " ms\n";
      return 0;
    }
  } catch (const Error& e) {
    Json out = envelope(app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name());
    out["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    emit(out);
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
