// Runs the ten acceptance criteria and prints one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "pcgeval/experiments.hpp"
#include "pcgeval/generators.hpp"
#include "pcgeval/rng.hpp"

using namespace pcgeval;

namespace {

constexpr std::uint64_t kMasterSeed = 1;

// Tolerances and limits, all in one place.
constexpr double kC1MaxSeconds = 60.0;
constexpr double kC2MaxSeconds = 60.0;
constexpr double kC2MinFactor = 5.0;
constexpr double kC3MaxSeconds = 300.0;
constexpr double kC3MaxAStarSpread = 0.15;
constexpr double kC4MaxSeconds = 300.0;
constexpr double kC4MinMeanGap = 0.05;
constexpr double kC5MaxSeconds = 120.0;
constexpr double kC5MinR = 0.7;
constexpr double kC5MaxP = 0.05;
constexpr double kC6MaxSeconds = 300.0;
constexpr double kC6MaxP = 0.05;
constexpr double kC9PearsonTol = 1e-10;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::vector<double> values_of(const std::vector<CsvRow>& rows, Metric metric, std::optional<Repr> repr = std::nullopt,
                              std::string_view experiment = {}) {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.metric != metric || r.repr != repr) continue;
    if (!experiment.empty() && r.experiment != experiment) continue;
    out.push_back(r.value);
  }
  return out;
}

// Levels produced along the way, reused by the property suite.
struct SharedCorpus {
  std::vector<TileGrid> levels;
  std::vector<double> astar_diversity;
};

SharedCorpus shared;

void keep_levels(const ExperimentConfig& cfg, LevelSize size, std::uint64_t seed) {
  auto corpus = generate_solvable_corpus(cfg, size, seed, "acceptance");
  shared.levels.insert(shared.levels.end(), corpus.levels.begin(), corpus.levels.end());
}

Outcome c1_pairwise_count() {
  const auto t0 = Clock::now();
  ExperimentConfig cfg;
  cfg.sizes = {{20, 20}};
  cfg.n_levels = 100;
  cfg.seeds = {kMasterSeed, kMasterSeed + 1};
  cfg.manhattan = true;
  auto res = run_diversity_distribution(cfg);
  const double elapsed = seconds_since(t0);

  bool counts_ok = true;
  std::string counts;
  for (std::uint64_t seed : cfg.seeds) {
    for (auto [metric, repr] : std::vector<std::pair<Metric, std::optional<Repr>>>{
             {Metric::CD, Repr::Flat}, {Metric::AStarDiversity, std::nullopt}, {Metric::ManhattanDiversity, std::nullopt}}) {
      std::size_t n = 0;
      for (const auto& r : res.rows) n += r.seed == seed && r.metric == metric && r.repr == repr ? 1 : 0;
      counts_ok &= n == 4950;
      counts += " " + std::to_string(n);
    }
  }
  auto astar = values_of(res.rows, Metric::AStarDiversity);
  shared.astar_diversity.insert(shared.astar_diversity.end(), astar.begin(), astar.end());
  keep_levels(cfg, cfg.sizes[0], kMasterSeed);
  return {counts_ok && elapsed < kC1MaxSeconds, "samples per metric per seed:" + counts + ", " + fmt(elapsed) + "s"};
}

Outcome c2_visual_variation() {
  const auto t0 = Clock::now();
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::VisualVariation;
  cfg.sizes = {{30, 30}};
  cfg.n_variants = 30;
  cfg.seeds = {kMasterSeed};
  auto res = run_visual_variation(cfg);
  const double elapsed = seconds_since(t0);

  auto astar = values_of(res.rows, Metric::AStarDiversity);
  bool all_zero = astar.size() == 435;
  for (double v : astar) all_zero &= v == 0.0;
  const double variant_cd = mean(values_of(res.rows, Metric::CD, Repr::Flat, "VisualVariation"));
  const double control_cd = mean(values_of(res.rows, Metric::CD, Repr::Flat, "VisualVariationControl"));
  const double factor = variant_cd / control_cd;
  return {all_zero && factor >= kC2MinFactor && elapsed < kC2MaxSeconds,
          std::string("A* diversity all zero: ") + (all_zero ? "yes" : "no") + ", CD variants " + fmt(variant_cd) +
              " vs identical " + fmt(control_cd) + " (x" + fmt(factor) + "), " + fmt(elapsed) + "s"};
}

Outcome c3_size_sweep() {
  const auto t0 = Clock::now();
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::SizeSweep;
  cfg.sizes = {{10, 10}, {20, 20}, {30, 30}, {40, 40}};
  cfg.n_levels = 50;
  cfg.seeds = {kMasterSeed};
  auto res = run_size_sweep(cfg);
  const double elapsed = seconds_since(t0);

  std::vector<double> cd_mean, cd_var, astar_mean;
  for (const auto& s : res.summary) {
    if (s.metric == Metric::CD) {
      cd_mean.push_back(s.mean);
      cd_var.push_back(s.variance);
    } else if (s.metric == Metric::AStarDiversity) {
      astar_mean.push_back(s.mean);
    }
  }
  bool mean_up = cd_mean.size() == 4;
  bool var_down = cd_var.size() == 4;
  for (std::size_t i = 1; i < cd_mean.size(); ++i) {
    mean_up &= cd_mean[i] > cd_mean[i - 1];
    var_down &= cd_var[i] < cd_var[i - 1];
  }
  const double spread = *std::max_element(astar_mean.begin(), astar_mean.end()) -
                        *std::min_element(astar_mean.begin(), astar_mean.end());
  std::string detail = "CD mean";
  for (double v : cd_mean) detail += " " + fmt(v);
  detail += ", CD var";
  for (double v : cd_var) detail += " " + fmt(v);
  detail += ", A* mean spread " + fmt(spread) + ", " + fmt(elapsed) + "s";
  return {mean_up && var_down && spread < kC3MaxAStarSpread && elapsed < kC3MaxSeconds, detail};
}

struct PlatformerCd {
  double mean_normal = 0, mean_concat = 0, mean_flat = 0;
  double r_flat_normal = 0, r_normal_concat = 0;
};

PlatformerCd platformer_cd(std::uint64_t seed, std::vector<double>* astar_out) {
  ExperimentConfig cfg;
  cfg.domain = Domain::Platformer;
  cfg.sizes = {{80, 14}};
  cfg.n_levels = 50;
  cfg.seeds = {seed};
  auto res = run_diversity_distribution(cfg);
  auto normal = values_of(res.rows, Metric::CD, Repr::Normal);
  auto concat = values_of(res.rows, Metric::CD, Repr::Concatenated);
  auto flat = values_of(res.rows, Metric::CD, Repr::Flat);
  if (astar_out) *astar_out = values_of(res.rows, Metric::AStarDiversity);
  return {mean(normal), mean(concat), mean(flat), pearson(flat, normal).statistic, pearson(normal, concat).statistic};
}

Outcome c4_representation_sensitivity() {
  const auto t0 = Clock::now();
  std::vector<double> astar;
  const auto m = platformer_cd(kMasterSeed, &astar);
  const double elapsed = seconds_since(t0);
  shared.astar_diversity.insert(shared.astar_diversity.end(), astar.begin(), astar.end());
  ExperimentConfig cfg;
  cfg.domain = Domain::Platformer;
  cfg.n_levels = 50;
  keep_levels(cfg, {80, 14}, kMasterSeed);

  const double gap = std::min({std::abs(m.mean_normal - m.mean_concat), std::abs(m.mean_normal - m.mean_flat),
                               std::abs(m.mean_concat - m.mean_flat)});
  const bool pass = gap >= kC4MinMeanGap && m.r_flat_normal < m.r_normal_concat && elapsed < kC4MaxSeconds;
  std::string detail = "CD means normal " + fmt(m.mean_normal) + " concatenated " + fmt(m.mean_concat) + " flat " +
                       fmt(m.mean_flat) + " (min gap " + fmt(gap) + "), r(flat,normal) " + fmt(m.r_flat_normal) +
                       " vs r(normal,concatenated) " + fmt(m.r_normal_concat) + ", " + fmt(elapsed) + "s";
  // Other master seeds, reported for context only.
  std::string others;
  for (std::uint64_t s = kMasterSeed + 1; s <= kMasterSeed + 4; ++s) {
    const auto o = platformer_cd(s, nullptr);
    others += " seed " + std::to_string(s) + ": " + fmt(o.r_flat_normal) + "<" + fmt(o.r_normal_concat) +
              (o.r_flat_normal < o.r_normal_concat ? " ok;" : " no;");
  }
  return {pass, detail + "\n       [info]" + others};
}

Outcome c5_diversity_cross_check() {
  const auto t0 = Clock::now();
  ExperimentConfig cfg;
  cfg.sizes = {{20, 20}};
  cfg.n_levels = 100;
  cfg.seeds = {kMasterSeed};
  cfg.manhattan = true;
  cfg.reprs = {Repr::Flat};
  auto res = run_diversity_distribution(cfg);
  const auto rep = pearson(values_of(res.rows, Metric::AStarDiversity), values_of(res.rows, Metric::ManhattanDiversity));
  const double elapsed = seconds_since(t0);
  return {rep.statistic > kC5MinR && rep.p_value < kC5MaxP && elapsed < kC5MaxSeconds,
          "r " + fmt(rep.statistic) + ", p " + fmt(rep.p_value) + ", n " + std::to_string(rep.n1) + ", " + fmt(elapsed) +
              "s"};
}

Outcome c6_difficulty_ordering() {
  const auto t0 = Clock::now();
  bool pass = true;
  std::string detail;
  for (std::uint64_t seed : {kMasterSeed, kMasterSeed + 1, kMasterSeed + 2}) {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::DifficultyOrdering;
    cfg.sizes = {{40, 40}};
    cfg.per_class = 20;
    cfg.seeds = {seed};
    auto res = run_difficulty_ordering(cfg);
    const OrderingMatrix& m = res.matrices.front();  // A* difficulty, alternative Less
    detail += "seed " + std::to_string(seed) + " p(1<3,4,5)";
    for (std::size_t k : {2, 3, 4}) {
      pass &= m.p_values[0][k] < kC6MaxP;
      detail += " " + fmt(m.p_values[0][k]);
    }
    detail += "; ";
  }
  for (std::uint64_t seed : {kMasterSeed}) {
    for (int cls = 1; cls <= 5; ++cls) {
      auto set = gen_difficulty_class_set(40, 40, cls, 4, derive_seed(seed, static_cast<std::uint64_t>(cls)));
      shared.levels.insert(shared.levels.end(), set.levels.levels.begin(), set.levels.levels.end());
    }
  }
  const double elapsed = seconds_since(t0);
  return {pass && elapsed < kC6MaxSeconds, detail + fmt(elapsed) + "s"};
}

std::optional<std::size_t> bfs_length(const TileGrid& g) {
  const int w = g.width();
  const int h = g.height();
  if (g.at(0, 0) != Tile::Empty || g.at(w - 1, h - 1) != Tile::Empty) return std::nullopt;
  std::vector<int> dist(static_cast<std::size_t>(w * h), -1);
  std::deque<std::pair<int, int>> q{{0, 0}};
  dist[0] = 0;
  while (!q.empty()) {
    auto [x, y] = q.front();
    q.pop_front();
    const int dx[4] = {0, 0, -1, 1};
    const int dy[4] = {-1, 1, 0, 0};
    for (int d = 0; d < 4; ++d) {
      const int nx = x + dx[d];
      const int ny = y + dy[d];
      if (nx < 0 || ny < 0 || nx >= w || ny >= h || g.at(nx, ny) != Tile::Empty) continue;
      auto& slot = dist[static_cast<std::size_t>(ny * w + nx)];
      if (slot >= 0) continue;
      slot = dist[static_cast<std::size_t>(y * w + x)] + 1;
      q.emplace_back(nx, ny);
    }
  }
  const int goal = dist.back();
  if (goal < 0) return std::nullopt;
  return static_cast<std::size_t>(goal);
}

Outcome c7_planner_optimality() {
  Rng rng(derive_seed(kMasterSeed, 7));
  int checked = 0;
  int matched = 0;
  while (checked < 200) {
    const int w = rng.range(2, 20);
    const int h = rng.range(2, 20);
    auto g = gen_random_maze(w, h, 0.3, rng.next());
    auto expected = bfs_length(g);
    if (!expected) continue;
    ++checked;
    auto r = solve_maze(g);
    matched += r.solved && r.actions.size() == *expected ? 1 : 0;
  }
  return {matched == 200, std::to_string(matched) + "/200 A* lengths equal BFS"};
}

Outcome c8_metric_properties() {
  std::size_t violations = 0;
  Rng rng(derive_seed(kMasterSeed, 8));

  for (int t = 0; t < 1000; ++t) {
    std::vector<int> s[3];
    for (auto& v : s) {
      v.resize(rng.below(40));
      for (int& a : v) a = static_cast<int>(rng.below(6));
    }
    const auto ab = levenshtein(s[0], s[1]);
    const auto bc = levenshtein(s[1], s[2]);
    const auto ac = levenshtein(s[0], s[2]);
    violations += ab != levenshtein(s[1], s[0]) ? 1 : 0;
    violations += ac > ab + bc ? 1 : 0;
  }

  for (double v : shared.astar_diversity) violations += v >= 0.0 && v <= 1.0 ? 0 : 1;
  std::size_t scored = 0;
  for (const auto& g : shared.levels) {
    const auto s = score_level(g, kDefaultBudget);
    violations += s.difficulty >= 0.0 && s.difficulty <= 1.0 ? 0 : 1;
    violations += s.leniency >= 0.0 && s.leniency <= 1.0 ? 0 : 1;
    ++scored;
  }

  for (int t = 0; t < 100; ++t) {
    std::string x(1024, '\0'), y(1024, '\0');
    for (char& c : x) c = static_cast<char>(rng.below(256));
    for (char& c : y) c = static_cast<char>(rng.below(256));
    violations += ncd(x, x) < ncd(x, y) ? 0 : 1;
  }
  return {violations == 0, std::to_string(violations) + " violations (" + std::to_string(shared.astar_diversity.size()) +
                               " A* diversity values, " + std::to_string(scored) + " levels scored)"};
}

Outcome c9_stat_oracles() {
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  const double p = mann_whitney_u(a, b, Alternative::Less).p_value;

  const std::vector<double> x{1.2,  2.9,  3.1,  4.8,  5.0,  6.7,  7.1,  8.4,  9.9,  10.2,
                              11.8, 12.1, 13.5, 14.9, 15.2, 16.8, 17.1, 18.6, 19.3, 20.7};
  const std::vector<double> y{2.1,  3.8,  2.9,  6.2,  5.1,  7.9,  6.8,  9.9,  11.2, 10.1,
                              13.5, 11.9, 15.8, 14.1, 17.2, 16.0, 19.4, 18.2, 21.7, 20.1};
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  const double direct = (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
  const double r = pearson(x, y).statistic;
  return {p == 0.05 && std::abs(r - direct) <= kC9PearsonTol,
          "Mann-Whitney p " + fmt(p) + ", Pearson |r - direct| " + fmt(std::abs(r - direct))};
}

std::string read_all(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome c10_determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "pcgeval_acceptance_determinism";
  fs::remove_all(root);
  std::vector<ExperimentConfig> configs(3);
  configs[0].sizes = {{20, 20}};
  configs[0].n_levels = 30;
  configs[0].seeds = {kMasterSeed, kMasterSeed + 1};
  configs[0].manhattan = true;
  configs[1].experiment = ExperimentKind::DifficultyOrdering;
  configs[1].sizes = {{21, 21}};
  configs[1].per_class = 6;
  configs[1].seeds = {kMasterSeed};
  configs[2].domain = Domain::Platformer;
  configs[2].sizes = {{40, 14}};
  configs[2].n_levels = 15;
  configs[2].seeds = {kMasterSeed};

  std::size_t files = 0;
  bool same = true;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    std::vector<std::vector<std::string>> runs;
    for (int run = 0; run < 2; ++run) {
      ExperimentConfig cfg = configs[c];
      cfg.threads = run == 0 ? 1 : 0;
      cfg.output_dir = (root / (std::to_string(c) + "_" + std::to_string(run))).string();
      std::vector<std::string> bytes;
      for (const auto& path : write_experiment_outputs(run_experiment(cfg), cfg)) bytes.push_back(read_all(path));
      runs.push_back(std::move(bytes));
    }
    same &= runs[0] == runs[1];
    files += runs[0].size();
  }
  fs::remove_all(root);
  return {same, std::to_string(files) + " CSV files compared across reruns with 1 and all threads"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"pairwise count", c1_pairwise_count},
      {"visual variation", c2_visual_variation},
      {"size sensitivity", c3_size_sweep},
      {"representation sensitivity", c4_representation_sensitivity},
      {"diversity cross-check", c5_diversity_cross_check},
      {"difficulty ordering", c6_difficulty_ordering},
      {"planner optimality", c7_planner_optimality},
      {"metric properties", c8_metric_properties},
      {"statistics oracles", c9_stat_oracles},
      {"determinism", c10_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("C%zu %s %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed;
}
