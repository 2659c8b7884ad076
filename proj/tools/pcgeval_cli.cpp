// pcgeval: generate levels, solve them, score them and run experiment recipes.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pcgeval/config.hpp"
#include "pcgeval/error.hpp"
#include "pcgeval/experiments.hpp"
#include "pcgeval/generators.hpp"
#include "pcgeval/metrics.hpp"
#include "pcgeval/platformer.hpp"
#include "pcgeval/rng.hpp"
#include "pcgeval/stats.hpp"

namespace fs = std::filesystem;
using namespace pcgeval;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInsufficient = 3;
constexpr int kExitIo = 4;

Domain domain_or_throw(const std::string& name) {
  auto d = parse_domain(name);
  if (!d) throw Error(ErrorCode::ConfigError, "unknown domain '" + name + "'");
  return *d;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TileGrid level_from_set(const std::string& path, Domain domain, std::size_t index) {
  LevelSet set = read_level_set_file(path, domain);
  if (index >= set.levels.size()) {
    throw Error(ErrorCode::ConfigError, path + " holds " + std::to_string(set.levels.size()) + " levels, no index " +
                                            std::to_string(index));
  }
  return std::move(set.levels[index]);
}

std::string join_actions(const std::vector<int>& actions) {
  std::string s;
  for (int a : actions) s += static_cast<char>('0' + a);
  return s;
}

struct GenerateArgs {
  std::string domain = "maze";
  std::string kind = "random";
  int width = 20;
  int height = 20;
  int count = 1;
  std::uint64_t seed = 1;
  double wall_prob = 0.3;
  int cls = 3;
  double gap_rate = 0.08;
  double enemy_rate = 0.08;
  std::string base;
  std::string out = "levels.txt";
};

int run_generate(const GenerateArgs& a, const std::string& output_dir) {
  const Domain domain = domain_or_throw(a.domain);
  LevelSet set;
  set.seed = a.seed;
  set.source_label = a.kind;
  if (a.kind == "variants") {
    const TileGrid base = read_level_file(a.base, Domain::Maze);
    set = gen_visual_variants(base, a.count, a.seed);
  } else {
    for (int i = 0; i < a.count; ++i) {
      const std::uint64_t s = derive_seed(a.seed, static_cast<std::uint64_t>(i));
      if (a.kind == "random" && domain == Domain::Maze) {
        set.levels.push_back(gen_random_maze(a.width, a.height, a.wall_prob, s));
      } else if (a.kind == "difficulty") {
        set.levels.push_back(gen_maze_with_difficulty(a.width, a.height, a.cls, s));
      } else if (a.kind == "fixed-path") {
        set.levels.push_back(gen_fixed_path_maze(a.width, a.height, s));
      } else if (a.kind == "random" && domain == Domain::Platformer) {
        PlatformerGenParams p;
        p.width = a.width;
        p.height = a.height;
        p.gap_rate = a.gap_rate;
        p.enemy_rate = a.enemy_rate;
        set.levels.push_back(gen_platformer(p, s));
      } else {
        throw Error(ErrorCode::ConfigError, "unknown generator kind '" + a.kind + "'");
      }
    }
  }
  fs::create_directories(output_dir);
  const std::string path = (fs::path(output_dir) / a.out).string();
  write_text_file(path, serialize_level_set(set));
  std::cout << "wrote " << set.levels.size() << " levels to " << path << '\n';
  return 0;
}

int run_solve(const std::string& domain_name_arg, const std::string& file, std::size_t index, std::size_t budget) {
  const Domain domain = domain_or_throw(domain_name_arg);
  const TileGrid grid = level_from_set(file, domain, index);
  if (domain == Domain::Maze) {
    const auto r = solve_maze(grid, budget);
    std::cout << "solved=" << (r.solved ? "true" : "false") << " budget_exhausted=" << (r.budget_exhausted ? "true" : "false")
              << " expansions=" << r.expansions_total << '\n';
    if (r.solved) {
      std::cout << "actions=" << join_actions(r.actions) << "\nlength=" << r.actions.size()
                << "\noff_path_expansions=" << off_path_expansions(r)
                << "\nreachable=" << reachable_cells(grid, r.path_states.front()).size() << '\n';
    }
  } else {
    const auto r = solve_platformer(grid, budget);
    std::cout << "solved=" << (r.solved ? "true" : "false") << " budget_exhausted=" << (r.budget_exhausted ? "true" : "false")
              << " expansions=" << r.expansions_total << '\n';
    if (r.solved) {
      const auto projected = project_to_agent(r);
      std::cout << "actions=" << join_actions(r.actions) << "\nlength=" << r.actions.size()
                << "\noff_path_expansions=" << off_path_expansions(projected)
                << "\nreachable=" << platformer_reachable_states(grid, 10'000'000).count << '\n';
    }
  }
  return 0;
}

template <class Solve>
int pair_metric(const std::string& metric, const TileGrid& a, const TileGrid& b, Solve solve) {
  const auto ra = solve(a);
  const auto rb = solve(b);
  const double v = metric == "astar-diversity" ? astar_diversity(ra, rb) : manhattan_diversity(ra, rb);
  std::cout << format_value(v) << '\n';
  return 0;
}

int run_metric(const std::string& metric, const std::string& domain_name_arg, const std::vector<std::string>& files,
               const std::string& repr_arg, std::size_t index, std::size_t budget) {
  const Domain domain = domain_or_throw(domain_name_arg);
  std::vector<TileGrid> grids;
  for (const auto& f : files) grids.push_back(level_from_set(f, domain, index));
  const bool pairwise = metric == "cd" || metric == "astar-diversity" || metric == "manhattan-diversity";
  if (grids.size() != (pairwise ? 2u : 1u)) {
    throw Error(ErrorCode::ConfigError, "metric '" + metric + "' takes " + (pairwise ? "two" : "one") + " level file(s)");
  }
  if (metric == "cd") {
    auto repr = parse_repr(repr_arg);
    if (!repr) throw Error(ErrorCode::ConfigError, "unknown representation '" + repr_arg + "'");
    std::cout << format_value(compression_distance(grids[0], grids[1], *repr)) << '\n';
    return 0;
  }
  if (metric == "astar-diversity" || metric == "manhattan-diversity") {
    if (domain == Domain::Maze) {
      return pair_metric(metric, grids[0], grids[1], [&](const TileGrid& g) { return solve_maze(g, budget); });
    }
    return pair_metric(metric, grids[0], grids[1], [&](const TileGrid& g) { return solve_platformer(g, budget); });
  }
  if (metric == "difficulty") {
    const double v = domain == Domain::Maze ? maze_difficulty(grids[0], budget) : platformer_difficulty(grids[0], budget);
    std::cout << format_value(v) << '\n';
    return 0;
  }
  if (metric == "leniency") {
    std::cout << format_value(leniency(grids[0])) << '\n';
    return 0;
  }
  throw Error(ErrorCode::ConfigError, "unknown metric '" + metric + "'");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<double> csv_column(const std::vector<std::vector<std::string>>& table, const std::vector<std::string>& header,
                               const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw Error(ErrorCode::ConfigError, "no column '" + name + "'");
  const auto col = static_cast<std::size_t>(it - header.begin());
  std::vector<double> out;
  for (const auto& row : table) {
    if (col < row.size() && !row[col].empty()) out.push_back(std::stod(row[col]));
  }
  return out;
}

int run_stats(const std::string& test, const std::string& csv, const std::string& x, const std::string& y,
              const std::string& alt_arg) {
  std::istringstream in(read_file(csv));
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ConfigError, csv + " is empty");
  const auto header = split_csv_line(line);
  std::vector<std::vector<std::string>> table;
  while (std::getline(in, line)) {
    if (!line.empty()) table.push_back(split_csv_line(line));
  }
  const auto xs = csv_column(table, header, x);
  const auto ys = csv_column(table, header, y);
  StatReport rep;
  if (test == "pearson") {
    rep = pearson(xs, ys);
  } else if (test == "mann-whitney") {
    auto alt = parse_alternative(alt_arg);
    if (!alt) throw Error(ErrorCode::ConfigError, "unknown alternative '" + alt_arg + "'");
    rep = mann_whitney_u(xs, ys, *alt);
  } else {
    throw Error(ErrorCode::ConfigError, "unknown test '" + test + "'");
  }
  std::cout << "test,statistic,p_value,n1,n2,alternative\n"
            << test << ',' << format_value(rep.statistic) << ',' << format_value(rep.p_value) << ',' << rep.n1 << ','
            << rep.n2 << ',' << alternative_name(rep.alternative) << '\n';
  return 0;
}

int run_experiment_cmd(const std::string& config_path, const std::vector<std::string>& overrides,
                       const std::string& output_dir) {
  std::vector<ConfigMap> layers;
  if (!config_path.empty()) layers.push_back(parse_config_text(read_file(config_path)));
  ConfigMap cli;
  for (const auto& kv : overrides) {
    auto parsed = parse_config_text(kv);
    if (parsed.size() != 1) throw Error(ErrorCode::ConfigError, "--set expects key=value");
    cli.insert_or_assign(parsed.begin()->first, parsed.begin()->second);
  }
  if (!output_dir.empty()) cli["output_dir"] = output_dir;
  layers.push_back(cli);
  const ExperimentConfig cfg = build_config(layers);
  const auto result = run_experiment(cfg);
  for (const auto& path : write_experiment_outputs(result, cfg)) std::cout << "wrote " << path << '\n';
  if (result.correlation) {
    std::cout << "pearson r=" << format_value(result.correlation->statistic)
              << " p=" << format_value(result.correlation->p_value) << " n=" << result.correlation->n1 << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation-based evaluation of procedurally generated tile levels"};
  app.require_subcommand(1);
  std::string output_dir;
  std::size_t budget = kDefaultBudget;

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a level-set file");
  generate->add_option("--domain", gen.domain, "maze or platformer");
  generate->add_option("--kind", gen.kind, "random, difficulty, fixed-path or variants");
  generate->add_option("--width", gen.width);
  generate->add_option("--height", gen.height);
  generate->add_option("--count", gen.count);
  generate->add_option("--seed", gen.seed);
  generate->add_option("--wall-prob", gen.wall_prob);
  generate->add_option("--class", gen.cls, "difficulty class 1-5");
  generate->add_option("--gap-rate", gen.gap_rate);
  generate->add_option("--enemy-rate", gen.enemy_rate);
  generate->add_option("--base", gen.base, "base maze file for --kind variants");
  generate->add_option("--out", gen.out, "file name inside the output directory");
  generate->add_option("--output-dir", output_dir)->default_val(".");

  std::string domain = "maze";
  std::string level_file;
  auto* solve = app.add_subcommand("solve", "Run A* on one level and print the trajectory");
  solve->add_option("--domain", domain);
  solve->add_option("--budget", budget);
  std::size_t index = 0;
  solve->add_option("--index", index, "which level of the file to use");
  solve->add_option("level", level_file)->required();

  std::string metric_name_arg;
  std::vector<std::string> metric_files;
  std::string repr = "flat";
  auto* metric = app.add_subcommand("metric", "Score one level or one pair of levels");
  metric->add_option("name", metric_name_arg, "cd, astar-diversity, manhattan-diversity, difficulty, leniency")->required();
  metric->add_option("levels", metric_files)->required();
  metric->add_option("--domain", domain);
  metric->add_option("--repr", repr, "normal, concatenated or flat");
  metric->add_option("--budget", budget);
  metric->add_option("--index", index, "which level of each file to use");

  std::string config_path;
  std::vector<std::string> overrides;
  auto* experiment = app.add_subcommand("experiment", "Run a config-driven experiment");
  experiment->add_option("--config", config_path);
  experiment->add_option("--set", overrides, "key=value override, repeatable");
  experiment->add_option("--output-dir", output_dir);

  std::string test, csv, col_x, col_y, alt = "two-sided";
  auto* stats = app.add_subcommand("stats", "Run a statistical test on two CSV columns");
  stats->add_option("test", test, "pearson or mann-whitney")->required();
  stats->add_option("--csv", csv)->required();
  stats->add_option("--x", col_x)->required();
  stats->add_option("--y", col_y)->required();
  stats->add_option("--alternative", alt, "less, greater or two-sided");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*generate) return run_generate(gen, output_dir);
    if (*solve) return run_solve(domain, level_file, index, budget);
    if (*metric) return run_metric(metric_name_arg, domain, metric_files, repr, index, budget);
    if (*experiment) return run_experiment_cmd(config_path, overrides, output_dir);
    if (*stats) return run_stats(test, csv, col_x, col_y, alt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::ConfigError: return kExitConfig;
      case ErrorCode::InsufficientSolvable: return kExitInsufficient;
      case ErrorCode::IoError: return kExitIo;
      default: return 1;
    }
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
