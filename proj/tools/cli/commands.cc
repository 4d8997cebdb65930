#include "cli/commands.h"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "cli/trace_csv.h"
#include "sfm/errors.h"
#include "sfm/grid_io.h"

namespace sfm::cli {

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
  if (!out) throw FormatError("write failed: " + path.string());
}

void write_mask(const RunConfig& config, const GridSpec& spec, const Subset& best) {
  if (config.output.empty()) return;
  const auto bytes = mask_bytes(best);
  if (spec.ndim == 2) {
    save_pgm(config.output, spec.dims[0], spec.dims[1], bytes);
  } else {
    save_raw_volume(config.output, config.output.string() + ".hdr", spec.dims, bytes);
  }
}

std::string trace_text(std::size_t r, const std::vector<TraceRecord>& trace, bool wall_time) {
  std::ostringstream out;
  out << trace_header(r) << '\n';
  write_trace_rows(out, trace, "", wall_time);
  return out.str();
}

std::size_t worker_count(std::size_t cells) {
  std::size_t threads = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SFM_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (*end != '\0' || v < 1) throw ArgumentError("SFM_THREADS must be a positive integer");
    threads = static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::min(threads, cells));
}

struct Cell {
  std::string algorithm;
  std::string epsilon_mode;
  std::uint64_t seed = 0;

  std::size_t num_summands = 0;
  bool frames = false;
  std::string status;
  std::string error;
  std::vector<TraceRecord> trace;
  std::size_t iterations = 0;
  double gap = 0.0;
};

void run_cell(const RunConfig& config, Cell& cell) {
  try {
    const Instance instance = load_instance(config, cell.seed);
    cell.num_summands = instance.decomposition.num_summands();
    cell.frames = instance.frames;
    const SolverConfig sc = solver_config(config, cell.algorithm, cell.epsilon_mode);
    SolveResult result = solve(instance.decomposition, sc);
    cell.status = result.converged ? "converged" : "budget";
    cell.iterations = result.iterations;
    cell.gap = result.gap;
    cell.trace = std::move(result.trace);
  } catch (const SolverFailure& e) {
    cell.status = "error";
    cell.error = e.what();
    cell.trace = e.trace();
  } catch (const std::exception& e) {
    cell.status = "error";
    cell.error = e.what();
  }
}

std::filesystem::path default_summary(const std::filesystem::path& out) {
  std::filesystem::path p = out;
  p.replace_extension();
  return p.string() + ".summary.csv";
}

std::string summary_text(const std::vector<Cell>& cells) {
  std::ostringstream out;
  out << "algorithm,epsilon_mode,seed,status,iterations,final_gap,sfmd_total,sfmc_total,"
         "sfmd_per_sfmc,sfmd_frames\n";
  for (const auto& cell : cells) {
    out << cell.algorithm << ',' << cell.epsilon_mode << ',' << cell.seed << ',' << cell.status;
    if (cell.trace.empty()) {
      out << ",,,,,,\n";
      continue;
    }
    const TraceRecord& last = cell.trace.back();
    out << ',' << cell.iterations << ',' << format_double(cell.gap) << ',' << last.sfmd_total
        << ',' << last.sfmc_total << ',';
    if (last.sfmc_total > 0) {
      out << format_double(static_cast<double>(last.sfmd_total) /
                           static_cast<double>(last.sfmc_total));
    }
    out << ',';
    if (cell.frames) out << last.sfmd_per_summand[0];
    out << '\n';
  }
  return out.str();
}

}  // namespace

int cmd_solve(const RunConfig& config, std::ostream& err) {
  try {
    const Instance instance = load_instance(config, config.seed);
    const SolverConfig sc = solver_config(config, config.algorithm, config.epsilon_mode);
    validate(sc, instance.decomposition);
    const std::size_t r = instance.decomposition.num_summands();
    SolveResult result;
    try {
      result = solve(instance.decomposition, sc);
    } catch (const SolverFailure& e) {
      if (!config.trace.empty()) write_file(config.trace, trace_text(r, e.trace(), config.wall_time));
      err << "sfm solve: " << e.what() << '\n';
      return kExitInputError;
    }
    if (!config.trace.empty()) {
      write_file(config.trace, trace_text(r, result.trace, config.wall_time));
    }
    write_mask(config, instance.spec, result.best);
    if (!result.converged) {
      err << "sfm solve: iteration budget exhausted after " << result.iterations
          << " iterations; gap " << format_double(result.gap) << '\n';
      return kExitBudget;
    }
    return kExitCertified;
  } catch (const std::exception& e) {
    err << "sfm solve: " << e.what() << '\n';
    return kExitInputError;
  }
}

int cmd_bench(const RunConfig& config, std::ostream& err) {
  if (config.algorithms.empty() || config.epsilon_modes.empty() || config.seeds.empty()) {
    err << "sfm bench: empty sweep (need --algorithms, --epsilon-modes and --seeds)\n";
    return kExitInputError;
  }
  if (config.trace.empty()) {
    err << "sfm bench: --out is required\n";
    return kExitInputError;
  }
  std::vector<Cell> cells;
  for (const auto& a : config.algorithms) {
    for (const auto& m : config.epsilon_modes) {
      for (std::uint64_t s : config.seeds) {
        Cell cell;
        cell.algorithm = a;
        cell.epsilon_mode = m;
        cell.seed = s;
        cells.push_back(std::move(cell));
      }
    }
  }
  std::size_t workers = 1;
  try {
    workers = worker_count(cells.size());
  } catch (const std::exception& e) {
    err << "sfm bench: " << e.what() << '\n';
    return kExitInputError;
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++) run_cell(config, cells[k]);
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::size_t r = 0;
  std::size_t ok = 0;
  for (const auto& cell : cells) {
    if (cell.status == "error") {
      err << "sfm bench: cell " << cell.algorithm << '/' << cell.epsilon_mode << '/' << cell.seed
          << " failed: " << cell.error << '\n';
    } else {
      ++ok;
    }
    r = std::max(r, cell.num_summands);
  }
  std::ostringstream csv;
  csv << "algorithm,epsilon_mode,seed," << trace_header(r) << '\n';
  for (const auto& cell : cells) {
    const std::string prefix =
        cell.algorithm + ',' + cell.epsilon_mode + ',' + std::to_string(cell.seed) + ',';
    write_trace_rows(csv, cell.trace, prefix, config.wall_time);
  }
  try {
    write_file(config.trace, csv.str());
    write_file(config.summary.empty() ? default_summary(config.trace) : config.summary,
               summary_text(cells));
  } catch (const std::exception& e) {
    err << "sfm bench: " << e.what() << '\n';
    return kExitInputError;
  }
  return ok > 0 ? 0 : kExitInputError;
}

int cmd_gen(const RunConfig& config, std::ostream& err) {
  try {
    if (config.output.empty()) throw ArgumentError("--out is required");
    const GridSpec spec = synth_random_grid(config.dims, {0.0, 1.0}, {-1.0, 1.0}, config.seed);
    save_grid_spec(config.output, spec);
    return 0;
  } catch (const std::exception& e) {
    err << "sfm gen: " << e.what() << '\n';
    return kExitInputError;
  }
}

namespace {

// Appends `--key=value` for config entries the command line does not set.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::filesystem::path config_path;
  for (std::size_t k = 2; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) config_path = args[k + 1];
    if (args[k].rfind("--config=", 0) == 0) config_path = args[k].substr(9);
  }
  if (config_path.empty()) return args;
  for (const auto& [key, value] : read_config_file(config_path)) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    const bool given = std::any_of(args.begin() + 2, args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (!given) args.push_back(flag + "=" + value);
  }
  return args;
}

void add_instance_options(CLI::App& app, RunConfig& c, std::string& dims) {
  app.add_option("--config", "key = value file; command-line flags take precedence");
  app.add_option("--input", c.input, "grid spec (.txt), image (.pgm) or volume (.raw)");
  app.add_option("--header", c.header, "header of a raw volume (default <input>.hdr)");
  app.add_option("--dims", dims, "synthetic grid size when no input is given, e.g. 32x32");
  app.add_option("--decomposition", c.decomposition, "auto, 2d, frames_chains or chains");
  app.add_option("--lambda", c.intensity.lambda[0], "pairwise weight scale");
  app.add_option("--sigma", c.intensity.sigma, "intensity contrast scale");
  app.add_option("--fg-mean", c.intensity.fg_mean, "foreground intensity");
  app.add_option("--bg-mean", c.intensity.bg_mean, "background intensity");
  app.add_option("--epsilon", c.fixed_epsilon, "box half-width for the fixed mode");
  app.add_option("--proportionality", c.proportionality, "schedule constant (default 1/sqrt(n))");
  app.add_option("--max-outer-iters", c.max_outer_iters, "outer iteration budget");
  app.add_option("--gap-tolerance", c.gap_tolerance, "stop at this discrete gap");
  app.add_flag("--wall-time", c.wall_time, "record wall-clock time in the trace");
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::string dims = "32x32";
  std::string seeds;

  CLI::App app{"Decomposable submodular minimization with constrained total-variation oracles",
               "sfm"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "solve one instance, write a mask and a trace");
  add_instance_options(*solve, config, dims);
  solve->add_option("--seed", config.seed, "seed of the synthetic grid");
  solve->add_option("--algorithm", config.algorithm, "bcd, acc or aar");
  solve->add_option("--epsilon-mode", config.epsilon_mode,
                    "delta, delta_over_t, delta_over_sqrt_t, fixed or infinite");
  solve->add_option("--output", config.output, "mask (PGM for 2D, raw + .hdr for 3D)");
  solve->add_option("--trace", config.trace, "trace CSV");

  auto* bench = app.add_subcommand("bench", "sweep algorithms x epsilon modes x seeds");
  add_instance_options(*bench, config, dims);
  bench->add_option("--algorithms", config.algorithms, "comma-separated")->delimiter(',');
  bench->add_option("--epsilon-modes", config.epsilon_modes, "comma-separated")->delimiter(',');
  bench->add_option("--seeds", config.seeds, "comma-separated")->delimiter(',');
  bench->add_option("--out", config.trace, "trace CSV for all cells");
  bench->add_option("--summary", config.summary, "summary CSV (default <out>.summary.csv)");

  auto* gen = app.add_subcommand("gen", "write a random grid spec");
  gen->add_option("--config", "key = value file; command-line flags take precedence");
  gen->add_option("--dims", dims, "grid size, e.g. 8x8 or 4x3x2");
  gen->add_option("--seed", config.seed, "generator seed");
  gen->add_option("--out", config.output, "output grid spec");

  try {
    args = merge_config(std::move(args));
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(std::move(reversed));
    config.dims = parse_dims(dims);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitInputError;
  } catch (const std::exception& e) {
    err << "sfm: " << e.what() << '\n';
    return kExitInputError;
  }
  config.intensity.lambda[1] = config.intensity.lambda[2] = config.intensity.lambda[0];

  if (solve->parsed()) return cmd_solve(config, err);
  if (bench->parsed()) return cmd_bench(config, err);
  return cmd_gen(config, err);
}

}  // namespace sfm::cli
