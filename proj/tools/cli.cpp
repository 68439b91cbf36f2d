#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <random>

#include "CLI11.hpp"
#include "pathcast/pipeline.hpp"
#include "pathcast/serialization.hpp"
#include "pathcast/suite.hpp"
#include "svg.hpp"

namespace pathcast::cli {

namespace fs = std::filesystem;

namespace {

std::map<std::string, PathMap> load_maps(const std::string& paths_dir) {
  if (paths_dir.empty()) {
    return suite_path_maps();  // bundled road network
  }
  auto maps = load_path_directory(paths_dir);
  if (maps.empty()) {
    throw std::runtime_error("no usable path files in '" + paths_dir + "'");
  }
  return maps;
}

fs::path sibling(const fs::path& out, const char* tag) {
  fs::path result = out;
  result.replace_extension();
  result += tag;
  return result;
}

struct PipelineFlags {
  PipelineConfig config;

  void attach(CLI::App* cmd) {
    cmd->add_option("--d-path", config.d_path, "Path association threshold, px");
    cmd->add_option("--d-trk", config.d_trk, "Tracking match threshold, px");
    cmd->add_option("--d-collision", config.d_collision, "Spatial collision threshold, px");
    cmd->add_option("--dt", config.delta_t, "Temporal collision tolerance, s");
    cmd->add_option("--horizon", config.horizon_t, "Prediction horizon duration, s");
    cmd->add_option("--n-future", config.n_future, "Future points per hypothesis");
    cmd->add_option("--stride", config.downsample_stride, "History downsampling stride, frames");
    cmd->add_option("--samples", config.downsample_count, "Retained history samples");
  }
};

int cmd_build_paths(const std::string& in_dir, const std::string& out_dir, std::size_t n_r) {
  // Traversal logs are CSV centroid files named <path>__<scenario>.csv.
  std::map<std::string, std::vector<TraversalLog>> by_path;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(in_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) {
    throw std::runtime_error("no traversal logs (*.csv) in '" + in_dir + "'");
  }
  std::sort(files.begin(), files.end());
  for (const fs::path& file : files) {
    const auto loaded = read_path_file(file);
    if (!loaded) {
      std::cerr << "pathcast build-paths: skipping empty log " << file << "\n";
      continue;
    }
    const std::string stem = file.stem().string();
    const std::size_t sep = stem.find("__");
    TraversalLog log;
    log.path_id = sep == std::string::npos ? stem : stem.substr(0, sep);
    log.scenario_id = sep == std::string::npos ? "" : stem.substr(sep + 2);
    log.centroids = loaded->points();
    by_path[log.path_id].push_back(std::move(log));
  }

  fs::create_directories(out_dir);
  for (const auto& [path_id, logs] : by_path) {
    const PathMap map = build_path_map(logs, n_r);
    write_path_file(map, fs::path(out_dir) / (path_id + ".csv"));
    std::cout << path_id << ": " << logs.size() << " traversals -> " << map.size()
              << " points\n";
  }
  return 0;
}

int cmd_simulate(const std::string& config_file, const std::string& paths_dir,
                 std::optional<std::uint64_t> seed, const std::string& out_file) {
  ScenarioConfig config = read_scenario_config(config_file);
  if (seed) {
    config.seed = *seed;
  }
  const auto maps = load_maps(paths_dir);
  const ScenarioResult result = generate_scenario(config, maps);

  std::ofstream det(out_file, std::ios::binary);
  if (!det) {
    throw std::runtime_error("cannot open '" + out_file + "'");
  }
  write_detection_stream(det, result.frames);

  const fs::path truth_file = sibling(out_file, ".truth.jsonl");
  std::ofstream truth(truth_file, std::ios::binary);
  write_truth_events(truth, result.events);

  StateLog log;
  log.frame_rate = config.frame_rate;
  log.frame_size = config.frame_size;
  log.states = result.states;
  const fs::path states_file = sibling(out_file, ".states.jsonl");
  std::ofstream states(states_file, std::ios::binary);
  write_state_log(states, log);

  std::cout << result.frames.size() << " frames, " << result.events.size()
            << " ground-truth events -> " << out_file << "\n";
  return 0;
}

int cmd_run(const std::string& paths_dir, const std::string& in_file,
            const std::string& out_file, const PipelineConfig& config,
            const std::string& plot_file) {
  const auto maps = load_maps(paths_dir);
  std::ifstream in(in_file, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + in_file + "'");
  }
  const auto stream = read_detection_stream(in, in_file);
  const auto reports = run_pipeline(stream, maps, config);

  std::ofstream out(out_file, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + out_file + "'");
  }
  write_frame_reports(out, reports);

  std::size_t warnings = 0;
  double total_ms = 0.0;
  for (const FrameReport& report : reports) {
    warnings += report.collisions.size();
    total_ms += report.processing_ms;
  }
  std::cout << reports.size() << " frames, " << warnings << " collision reports -> " << out_file
            << "\n";
  if (!reports.empty()) {
    std::cerr << "mean frame time " << total_ms / static_cast<double>(reports.size())
              << " ms\n";
  }

  if (!plot_file.empty()) {
    double extent = 2048.0;
    for (const auto& [id, map] : maps) {
      for (const PixelPoint& p : map.points()) {
        extent = std::max({extent, p.x, p.y});
      }
    }
    write_trajectory_svg(plot_file, maps, reports, extent);
  }
  return 0;
}

// Pairs <id>.jsonl report files with <id>.truth.jsonl / <id>.states.jsonl.
std::vector<ScenarioRun> collect_runs(const std::string& reports_arg,
                                      const std::string& truth_arg) {
  std::vector<std::pair<std::string, fs::path>> report_files;
  if (fs::is_directory(reports_arg)) {
    for (const auto& entry : fs::directory_iterator(reports_arg)) {
      const std::string name = entry.path().filename().string();
      if (entry.is_regular_file() && name.ends_with(".jsonl") &&
          !name.ends_with(".truth.jsonl") && !name.ends_with(".states.jsonl")) {
        report_files.emplace_back(entry.path().stem().string(), entry.path());
      }
    }
    std::sort(report_files.begin(), report_files.end());
  } else {
    report_files.emplace_back(fs::path(reports_arg).stem().string(), reports_arg);
  }
  if (report_files.empty()) {
    throw std::runtime_error("no report files under '" + reports_arg + "'");
  }

  std::vector<ScenarioRun> runs;
  for (const auto& [id, report_file] : report_files) {
    fs::path truth_file;
    fs::path states_file;
    if (fs::is_directory(truth_arg)) {
      truth_file = fs::path(truth_arg) / (id + ".truth.jsonl");
      states_file = fs::path(truth_arg) / (id + ".states.jsonl");
    } else {
      truth_file = truth_arg;
      states_file = sibling(fs::path(truth_arg).string(), ".states.jsonl");
      if (truth_file.string().ends_with(".truth.jsonl")) {
        std::string base = truth_file.string();
        base.resize(base.size() - std::string(".truth.jsonl").size());
        states_file = base + ".states.jsonl";
      }
    }
    if (!fs::exists(truth_file) || !fs::exists(states_file)) {
      throw std::runtime_error("scenario '" + id + "': missing ground truth (" +
                               truth_file.string() + ", " + states_file.string() + ")");
    }

    ScenarioRun run;
    run.scenario_id = id;
    std::ifstream rep(report_file, std::ios::binary);
    run.reports = read_frame_reports(rep, report_file.string());
    std::ifstream tru(truth_file, std::ios::binary);
    run.events = read_truth_events(tru, truth_file.string());
    std::ifstream sta(states_file, std::ios::binary);
    StateLog log = read_state_log(sta, states_file.string());
    run.states = std::move(log.states);
    run.frame_rate = log.frame_rate;
    runs.push_back(std::move(run));
  }
  return runs;
}

int cmd_evaluate(const std::string& reports_arg, const std::string& truth_arg, double warn,
                 const std::string& out_file) {
  const auto runs = collect_runs(reports_arg, truth_arg);
  const EvaluationResult result = evaluate(runs, warn);
  std::cout << "scenarios:      " << runs.size() << "\n"
            << "true positives: " << result.true_positives << "\n"
            << "false positives:" << result.false_positives << "\n"
            << "false negatives:" << result.false_negatives << "\n"
            << "recall:         " << result.recall << "\n"
            << "precision:      " << result.precision << "\n"
            << "mean lead time: " << result.mean_lead_time << " s\n";
  if (!out_file.empty()) {
    std::ofstream out(out_file, std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot open '" + out_file + "'");
    }
    write_metrics(out, result);
  }
  return 0;
}

int cmd_bench(std::size_t max_points, std::size_t queries) {
  using clock = std::chrono::steady_clock;
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> coord(0.0, 2048.0);

  std::cout << "points      build_ms   kd_ns/query   linear_ns/query   speedup\n";
  for (std::size_t n : {std::size_t{1000}, std::size_t{10000}, max_points}) {
    std::vector<PixelPoint> points;
    points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      points.push_back({coord(rng), coord(rng)});
    }
    std::vector<PixelPoint> probes;
    for (std::size_t i = 0; i < queries; ++i) {
      probes.push_back({coord(rng), coord(rng)});
    }

    const auto t0 = clock::now();
    const KdTree tree(points);
    const auto t1 = clock::now();

    std::size_t sink = 0;
    for (const PixelPoint& q : probes) {
      sink += tree.nearest(q).index;
    }
    const auto t2 = clock::now();

    // Linear scan on a subset large enough to time reliably.
    const std::size_t linear_queries = std::max<std::size_t>(queries / 10, 50);
    for (std::size_t i = 0; i < linear_queries; ++i) {
      const PixelPoint q = probes[i % probes.size()];
      std::size_t best = 0;
      double best_d2 = squared_distance(q, points[0]);
      for (std::size_t j = 1; j < points.size(); ++j) {
        const double d2 = squared_distance(q, points[j]);
        if (d2 < best_d2) {
          best_d2 = d2;
          best = j;
        }
      }
      sink += best;
    }
    const auto t3 = clock::now();

    const double build_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    const double kd_ns =
        std::chrono::duration<double, std::nano>(t2 - t1).count() / static_cast<double>(queries);
    const double lin_ns = std::chrono::duration<double, std::nano>(t3 - t2).count() /
                          static_cast<double>(linear_queries);
    char line[160];
    std::snprintf(line, sizeof(line), "%-11zu %-10.2f %-13.0f %-17.0f %.1fx%s\n", n, build_ms,
                  kd_ns, lin_ns, lin_ns / kd_ns, sink == 0 ? " " : "");
    std::cout << line;
  }
  return 0;
}

int cmd_suite(const std::string& out_dir) {
  const fs::path root(out_dir);
  fs::create_directories(root / "paths");
  fs::create_directories(root / "configs");
  fs::create_directories(root / "traversals");

  const auto maps = suite_path_maps();
  for (const auto& [id, map] : maps) {
    write_path_file(map, root / "paths" / (id + ".csv"));
  }
  // Noisy single-vehicle recordings, three per route: build-paths can
  // reconstruct the network from these.
  for (const auto& [id, map] : maps) {
    for (int q = 0; q < 3; ++q) {
      ScenarioConfig config;
      config.seed = 7000 + static_cast<std::uint64_t>(q);
      config.noise_sigma = 2.0;
      config.vehicles.push_back({id, 0, 160.0, 30.0, 15.0});
      const TraversalLog log = record_traversal(id, config, maps);
      const PathMap as_map(id + "__" + log.scenario_id, log.centroids);
      write_path_file(as_map, root / "traversals" / (as_map.id() + ".csv"));
    }
  }

  const auto scenarios = suite_scenarios();
  std::ofstream labels(root / "labels.jsonl", std::ios::binary);
  for (const SuiteScenario& s : scenarios) {
    write_scenario_config(s.config, root / "configs" / (s.id + ".json"));
    labels << "{\"id\":\"" << s.id << "\",\"collision\":" << (s.collision_designed ? "true" : "false")
           << "}\n";
  }
  std::cout << scenarios.size() << " scenario configs, " << maps.size() << " paths -> " << out_dir
            << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Vehicle tracking and spatiotemporal collision prediction over path maps"};
  app.require_subcommand(1);

  // build-paths
  std::string bp_in;
  std::string bp_out;
  std::size_t bp_n_r = PipelineConfig{}.n_r;
  auto* build_paths = app.add_subcommand(
      "build-paths", "Aggregate traversal centroid logs into resampled path files");
  build_paths->add_option("--in", bp_in, "Directory of <path>__<scenario>.csv centroid logs")
      ->required()
      ->check(CLI::ExistingDirectory);
  build_paths->add_option("--out", bp_out, "Output directory for path files")->required();
  build_paths->add_option("--n-r", bp_n_r, "Resampled points per path");

  // simulate
  std::string sim_config;
  std::string sim_paths;
  std::string sim_out;
  std::optional<std::uint64_t> sim_seed;
  auto* simulate = app.add_subcommand(
      "simulate", "Generate a detection stream plus ground truth from a scenario config");
  simulate->add_option("--config", sim_config, "Scenario config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--paths", sim_paths,
                       "Path file directory (defaults to the bundled road network)");
  simulate->add_option("--seed", sim_seed, "Override the config's random seed");
  simulate->add_option("--out", sim_out, "Detection stream output (.jsonl)")->required();

  // run
  std::string run_paths;
  std::string run_in;
  std::string run_out;
  std::string run_plot;
  PipelineFlags run_flags;
  auto* run_cmd = app.add_subcommand(
      "run", "Run tracking, prediction, and collision estimation over a detection stream");
  run_cmd->add_option("--paths", run_paths,
                      "Path file directory (defaults to the bundled road network)");
  run_cmd->add_option("--in", run_in, "Detection stream (.jsonl)")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run_out, "Frame report output (.jsonl)")->required();
  run_cmd->add_option("--plot", run_plot, "Optional SVG trajectory overlay");
  run_flags.attach(run_cmd);

  // evaluate
  std::string eval_reports;
  std::string eval_truth;
  std::string eval_out;
  double eval_warn = 0.3;
  auto* evaluate_cmd = app.add_subcommand(
      "evaluate", "Score frame reports against simulator ground truth");
  evaluate_cmd->add_option("--reports", eval_reports, "Report file or directory")->required();
  evaluate_cmd->add_option("--truth", eval_truth, "Ground-truth file or directory")->required();
  evaluate_cmd->add_option("--warn", eval_warn, "Warning probability threshold");
  evaluate_cmd->add_option("--out", eval_out, "Optional metrics JSON output");

  // bench
  std::size_t bench_n = 100000;
  std::size_t bench_queries = 2000;
  auto* bench = app.add_subcommand("bench", "K-d tree vs linear scan latency table");
  bench->add_option("--n", bench_n, "Largest point count");
  bench->add_option("--queries", bench_queries, "Queries per measurement");

  // suite
  std::string suite_out;
  auto* suite = app.add_subcommand(
      "suite", "Materialize the bundled 100-scenario evaluation suite");
  suite->add_option("--out", suite_out, "Output directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "pathcast: " << e.what() << "\n";
    return 1;
  }

  try {
    if (build_paths->parsed()) {
      return cmd_build_paths(bp_in, bp_out, bp_n_r);
    }
    if (simulate->parsed()) {
      return cmd_simulate(sim_config, sim_paths, sim_seed, sim_out);
    }
    if (run_cmd->parsed()) {
      return cmd_run(run_paths, run_in, run_out, run_flags.config, run_plot);
    }
    if (evaluate_cmd->parsed()) {
      return cmd_evaluate(eval_reports, eval_truth, eval_warn, eval_out);
    }
    if (bench->parsed()) {
      return cmd_bench(bench_n, bench_queries);
    }
    if (suite->parsed()) {
      return cmd_suite(suite_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "pathcast: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace pathcast::cli
