#include "pcgeval/experiments.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <sstream>
#include <thread>

#include "pcgeval/generators.hpp"
#include "pcgeval/parallel.hpp"
#include "pcgeval/platformer.hpp"
#include "pcgeval/rng.hpp"

namespace pcgeval {

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PCG_EVAL_THREADS")) {
    unsigned cap = 0;
    const std::string_view v(env);
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), cap);
    if (ec == std::errc() && ptr == v.data() + v.size() && cap > 0) n = std::min(n, cap);
  }
  return n;
}

unsigned effective_threads(const ExperimentConfig& cfg) {
  const unsigned cap = worker_count();
  return cfg.threads == 0 ? cap : std::min(cfg.threads, cap);
}

std::string format_value(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string csv_header() { return "experiment,domain,seed,size_w,size_h,metric,repr,id_a,id_b,value"; }

std::string format_row(const CsvRow& r) {
  std::string out;
  out += r.experiment;
  out += ',';
  out += domain_name(r.domain);
  out += ',' + std::to_string(r.seed) + ',' + std::to_string(r.size_w) + ',' + std::to_string(r.size_h) + ',';
  out += metric_name(r.metric);
  out += ',';
  if (r.repr) out += repr_name(*r.repr);
  out += ',' + std::to_string(r.id_a) + ',';
  if (r.id_b) out += std::to_string(*r.id_b);
  out += ',' + format_value(r.value);
  return out;
}

std::string rows_to_csv(const std::vector<CsvRow>& rows) {
  std::string out = csv_header() + '\n';
  for (const auto& r : rows) out += format_row(r) + '\n';
  return out;
}

TraceOutcome trace_level(const TileGrid& grid, std::size_t budget) {
  TraceOutcome out;
  auto fill = [&](const auto& result) {
    if (result.solved) {
      out.trace = LevelTrace{result.actions, path_positions(result)};
    } else {
      out.reason = result.budget_exhausted ? "budget_exhausted" : "no_path";
    }
  };
  if (grid.domain() == Domain::Maze) {
    if (!is_solvable(grid)) {
      out.reason = "unsolvable";
      return out;
    }
    fill(solve_maze(grid, budget));
  } else {
    fill(solve_platformer(grid, budget));
  }
  return out;
}

TileGrid generate_level(const ExperimentConfig& cfg, LevelSize size, std::uint64_t seed, std::size_t index) {
  const std::uint64_t level_seed = derive_seed(seed, index);
  if (cfg.domain == Domain::Maze) return gen_random_maze(size.width, size.height, cfg.wall_prob, level_seed);
  PlatformerGenParams p;
  p.width = size.width;
  p.height = size.height;
  p.gap_rate = cfg.gap_rate;
  p.enemy_rate = cfg.enemy_rate;
  p.step_rate = cfg.step_rate;
  p.brick_rate = cfg.brick_rate;
  return gen_platformer(p, level_seed);
}

Corpus generate_solvable_corpus(const ExperimentConfig& cfg, LevelSize size, std::uint64_t seed,
                                std::string_view experiment) {
  const auto wanted = static_cast<std::size_t>(cfg.n_levels);
  const std::size_t max_attempts = wanted * static_cast<std::size_t>(cfg.max_attempts_factor);
  const unsigned threads = effective_threads(cfg);
  // Different sizes draw from different streams of the same master seed.
  const std::uint64_t stream = derive_seed(seed, (static_cast<std::uint64_t>(size.width) << 32) | static_cast<std::uint32_t>(size.height));

  Corpus corpus;
  std::size_t attempt = 0;
  while (corpus.levels.size() < wanted && attempt < max_attempts) {
    // Batches keep the accepted prefix identical to a sequential scan.
    const std::size_t batch = std::min(max_attempts - attempt, std::max<std::size_t>(wanted - corpus.levels.size(), threads));
    std::vector<std::optional<TileGrid>> grids(batch);
    std::vector<TraceOutcome> outcomes(batch);
    parallel_for(batch, threads, [&](std::size_t i) {
      grids[i] = generate_level(cfg, size, stream, attempt + i);
      outcomes[i] = trace_level(*grids[i], cfg.budget);
    });
    for (std::size_t i = 0; i < batch && corpus.levels.size() < wanted; ++i) {
      if (outcomes[i].trace) {
        corpus.levels.push_back(std::move(*grids[i]));
        corpus.traces.push_back(std::move(*outcomes[i].trace));
      } else {
        corpus.exclusions.push_back({std::string(experiment), cfg.domain, seed, size, attempt + i, outcomes[i].reason});
      }
    }
    attempt += batch;
  }
  return corpus;
}

std::vector<MetricSample> pairwise_samples(std::span<const TileGrid> levels, std::span<const LevelTrace> traces,
                                           const PairwiseOptions& opts) {
  const auto pairs = pairwise_indices(levels.size());
  const std::size_t np = pairs.size();

  struct Group {
    Metric metric;
    std::optional<Repr> repr;
  };
  std::vector<Group> groups;
  for (Repr r : opts.reprs) groups.push_back({Metric::CD, r});
  if (opts.astar) groups.push_back({Metric::AStarDiversity, std::nullopt});
  if (opts.manhattan) groups.push_back({Metric::ManhattanDiversity, std::nullopt});
  if ((opts.astar || opts.manhattan) && traces.size() != levels.size()) {
    throw Error(ErrorCode::InvalidArgument, "trajectory metrics need one trace per level");
  }

  // Representations and their compressed sizes are shared by every pair.
  std::vector<std::vector<std::string>> strings(opts.reprs.size(), std::vector<std::string>(levels.size()));
  std::vector<std::vector<double>> sizes(opts.reprs.size(), std::vector<double>(levels.size()));
  parallel_for(opts.reprs.size() * levels.size(), opts.threads, [&](std::size_t k) {
    const std::size_t r = k / levels.size();
    const std::size_t i = k % levels.size();
    strings[r][i] = representation(levels[i], opts.reprs[r]);
    sizes[r][i] = static_cast<double>(compressed_size(strings[r][i]));
  });

  std::vector<MetricSample> out(groups.size() * np);
  parallel_for(out.size(), opts.threads, [&](std::size_t k) {
    const std::size_t g = k / np;
    const auto [i, j] = pairs[k % np];
    MetricSample s{groups[g].metric, 0.0, i, j, groups[g].repr};
    switch (groups[g].metric) {
      case Metric::CD: {
        const std::string& x = strings[g][i];
        const std::string& y = strings[g][j];
        const double cxy = static_cast<double>(compressed_size(x + y));
        const double cx = sizes[g][i];
        const double cy = sizes[g][j];
        s.value = (cxy - std::min(cx, cy)) / std::max(cx, cy);
        break;
      }
      case Metric::AStarDiversity:
        s.value = normalized_edit_distance(traces[i].actions, traces[j].actions);
        break;
      case Metric::ManhattanDiversity:
        s.value = mean_position_distance(traces[i].path, traces[j].path);
        break;
      default:
        break;
    }
    out[k] = s;
  });
  return out;
}

namespace {

CsvRow to_row(std::string_view experiment, Domain domain, std::uint64_t seed, LevelSize size, const MetricSample& s) {
  return CsvRow{std::string(experiment), domain, seed, size.width, size.height, s.metric, s.repr, s.id_a, s.id_b, s.value};
}

PairwiseOptions pairwise_options(const ExperimentConfig& cfg) {
  PairwiseOptions o;
  o.reprs = effective_reprs(cfg);
  o.astar = true;
  o.manhattan = cfg.manhattan;
  o.threads = effective_threads(cfg);
  return o;
}

void append_diversity(ExperimentResult& res, const ExperimentConfig& cfg, LevelSize size, std::uint64_t seed,
                      std::string_view experiment) {
  Corpus corpus = generate_solvable_corpus(cfg, size, seed, experiment);
  res.exclusions.insert(res.exclusions.end(), corpus.exclusions.begin(), corpus.exclusions.end());
  if (corpus.levels.size() < 2) {
    throw Error(ErrorCode::InsufficientSolvable, "seed " + std::to_string(seed) + " produced " +
                                                     std::to_string(corpus.levels.size()) + " solvable levels");
  }
  for (const auto& s : pairwise_samples(corpus.levels, corpus.traces, pairwise_options(cfg))) {
    res.rows.push_back(to_row(experiment, cfg.domain, seed, size, s));
  }
}

}  // namespace

ExperimentResult run_diversity_distribution(const ExperimentConfig& cfg) {
  ExperimentResult res;
  res.kind = ExperimentKind::DiversityDistribution;
  for (std::uint64_t seed : cfg.seeds) append_diversity(res, cfg, cfg.sizes.front(), seed, "DiversityDistribution");
  return res;
}

ExperimentResult run_size_sweep(const ExperimentConfig& cfg) {
  if (cfg.sizes.size() < 2) throw Error(ErrorCode::ConfigError, "a size sweep needs at least two sizes");
  ExperimentResult res;
  res.kind = ExperimentKind::SizeSweep;
  for (const LevelSize size : cfg.sizes) {
    const std::size_t first = res.rows.size();
    for (std::uint64_t seed : cfg.seeds) append_diversity(res, cfg, size, seed, "SizeSweep");

    std::vector<SummaryRow> groups;
    std::vector<std::vector<double>> values;
    for (std::size_t k = first; k < res.rows.size(); ++k) {
      const CsvRow& r = res.rows[k];
      std::size_t g = 0;
      while (g < groups.size() && !(groups[g].metric == r.metric && groups[g].repr == r.repr)) ++g;
      if (g == groups.size()) {
        groups.push_back({size, r.metric, r.repr, 0, 0.0, 0.0});
        values.emplace_back();
      }
      values[g].push_back(r.value);
    }
    for (std::size_t g = 0; g < groups.size(); ++g) {
      groups[g].count = values[g].size();
      groups[g].mean = mean(values[g]);
      groups[g].variance = variance(values[g]);
      res.summary.push_back(groups[g]);
    }
  }
  return res;
}

ExperimentResult run_visual_variation(const ExperimentConfig& cfg) {
  if (cfg.domain != Domain::Maze) throw Error(ErrorCode::ConfigError, "visual variation runs on mazes");
  ExperimentResult res;
  res.kind = ExperimentKind::VisualVariation;
  const LevelSize size = cfg.sizes.front();
  const unsigned threads = effective_threads(cfg);
  for (std::uint64_t seed : cfg.seeds) {
    const TileGrid base = gen_fixed_path_maze(size.width, size.height, derive_seed(seed, 0));
    const LevelSet variants = gen_visual_variants(base, cfg.n_variants, derive_seed(seed, 1));
    if (variants.levels.size() < 2) throw Error(ErrorCode::InsufficientSolvable, "need at least two variants");

    std::vector<LevelTrace> traces(variants.levels.size());
    std::vector<std::string> failures(variants.levels.size());
    parallel_for(variants.levels.size(), threads, [&](std::size_t i) {
      auto t = trace_level(variants.levels[i], cfg.budget);
      if (t.trace) traces[i] = std::move(*t.trace);
      else failures[i] = t.reason;
    });
    for (const auto& f : failures) {
      if (!f.empty()) throw Error(ErrorCode::UnsolvableBase, "variant not solvable: " + f);
    }

    PairwiseOptions opts;
    opts.reprs = {Repr::Flat};
    opts.manhattan = cfg.manhattan;
    opts.threads = threads;
    for (const auto& s : pairwise_samples(variants.levels, traces, opts)) {
      res.rows.push_back(to_row("VisualVariation", cfg.domain, seed, size, s));
    }

    // Control group: the base level repeated, which is what "identical" scores like.
    const std::vector<TileGrid> copies(variants.levels.size(), base);
    PairwiseOptions control;
    control.reprs = {Repr::Flat};
    control.astar = false;
    control.threads = threads;
    for (const auto& s : pairwise_samples(copies, {}, control)) {
      res.rows.push_back(to_row("VisualVariationControl", cfg.domain, seed, size, s));
    }
  }
  return res;
}

LevelScores score_level(const TileGrid& grid, std::size_t budget) {
  if (grid.domain() == Domain::Maze) return {maze_difficulty(grid, budget), leniency_maze(grid)};
  return {platformer_difficulty(grid, budget), leniency_platformer(grid)};
}

StatReport difficulty_leniency_correlation(std::span<const LevelScores> scores) {
  std::vector<double> xs, ys;
  for (const auto& s : scores) {
    xs.push_back(s.difficulty);
    ys.push_back(s.leniency);
  }
  return pearson(xs, ys);
}

ExperimentResult run_difficulty_ordering(const ExperimentConfig& cfg) {
  if (cfg.domain != Domain::Maze) throw Error(ErrorCode::ConfigError, "difficulty ordering runs on mazes");
  ExperimentResult res;
  res.kind = ExperimentKind::DifficultyOrdering;
  const LevelSize size = cfg.sizes.front();
  const unsigned threads = effective_threads(cfg);
  for (std::uint64_t seed : cfg.seeds) {
    std::vector<TileGrid> levels;
    std::vector<int> labels;
    for (int cls = 1; cls <= 5; ++cls) {
      auto set = gen_difficulty_class_set(size.width, size.height, cls, cfg.per_class,
                                          derive_seed(seed, static_cast<std::uint64_t>(cls)));
      for (auto& g : set.levels.levels) {
        levels.push_back(std::move(g));
        labels.push_back(cls);
      }
    }
    std::vector<LevelScores> scores(levels.size());
    parallel_for(levels.size(), threads, [&](std::size_t i) { scores[i] = score_level(levels[i], cfg.budget); });

    std::array<std::vector<double>, 5> difficulty, leniency_by_class;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      res.classes.push_back({seed, i, labels[i]});
      res.rows.push_back({"DifficultyOrdering", cfg.domain, seed, size.width, size.height, Metric::AStarDifficulty,
                          std::nullopt, i, std::nullopt, scores[i].difficulty});
      res.rows.push_back({"DifficultyOrdering", cfg.domain, seed, size.width, size.height, Metric::Leniency,
                          std::nullopt, i, std::nullopt, scores[i].leniency});
      difficulty[static_cast<std::size_t>(labels[i] - 1)].push_back(scores[i].difficulty);
      leniency_by_class[static_cast<std::size_t>(labels[i] - 1)].push_back(scores[i].leniency);
    }

    // Harder classes should score higher A* difficulty and lower leniency.
    auto matrix = [&](Metric metric, Alternative alt, const std::array<std::vector<double>, 5>& by_class) {
      OrderingMatrix m;
      m.seed = seed;
      m.metric = metric;
      m.alternative = alt;
      for (std::size_t i = 0; i < 5; ++i) {
        m.means[i] = mean(by_class[i]);
        for (std::size_t j = 0; j < 5; ++j) {
          m.p_values[i][j] = i == j ? std::numeric_limits<double>::quiet_NaN()
                                    : mann_whitney_u(by_class[i], by_class[j], alt).p_value;
        }
      }
      return m;
    };
    res.matrices.push_back(matrix(Metric::AStarDifficulty, Alternative::Less, difficulty));
    res.matrices.push_back(matrix(Metric::Leniency, Alternative::Greater, leniency_by_class));
  }
  return res;
}

ExperimentResult run_difficulty_correlation(const ExperimentConfig& cfg) {
  ExperimentResult res;
  res.kind = ExperimentKind::DifficultyCorrelation;
  const LevelSize size = cfg.sizes.front();
  const unsigned threads = effective_threads(cfg);
  std::vector<LevelScores> all;
  for (std::uint64_t seed : cfg.seeds) {
    Corpus corpus = generate_solvable_corpus(cfg, size, seed, "DifficultyCorrelation");
    res.exclusions.insert(res.exclusions.end(), corpus.exclusions.begin(), corpus.exclusions.end());
    std::vector<LevelScores> scores(corpus.levels.size());
    parallel_for(corpus.levels.size(), threads,
                 [&](std::size_t i) { scores[i] = score_level(corpus.levels[i], cfg.budget); });
    for (std::size_t i = 0; i < scores.size(); ++i) {
      res.rows.push_back({"DifficultyCorrelation", cfg.domain, seed, size.width, size.height, Metric::AStarDifficulty,
                          std::nullopt, i, std::nullopt, scores[i].difficulty});
      res.rows.push_back({"DifficultyCorrelation", cfg.domain, seed, size.width, size.height, Metric::Leniency,
                          std::nullopt, i, std::nullopt, scores[i].leniency});
    }
    all.insert(all.end(), scores.begin(), scores.end());
  }
  if (all.size() < 100) {
    throw Error(ErrorCode::InsufficientSolvable,
                "correlation needs at least 100 solvable levels, got " + std::to_string(all.size()));
  }
  res.correlation = difficulty_leniency_correlation(all);
  return res;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case ExperimentKind::DiversityDistribution: return run_diversity_distribution(cfg);
    case ExperimentKind::SizeSweep: return run_size_sweep(cfg);
    case ExperimentKind::VisualVariation: return run_visual_variation(cfg);
    case ExperimentKind::DifficultyOrdering: return run_difficulty_ordering(cfg);
    case ExperimentKind::DifficultyCorrelation: return run_difficulty_correlation(cfg);
  }
  throw Error(ErrorCode::ConfigError, "unknown experiment");
}

std::vector<std::string> write_experiment_outputs(const ExperimentResult& res, const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + cfg.output_dir + ": " + ec.message());

  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& body) {
    const std::string path = (fs::path(cfg.output_dir) / name).string();
    write_text_file(path, body);
    written.push_back(path);
  };

  emit("samples.csv", rows_to_csv(res.rows));

  std::string ex = "experiment,domain,seed,size_w,size_h,attempt,reason\n";
  for (const auto& e : res.exclusions) {
    ex += e.experiment + ',' + domain_name(e.domain) + ',' + std::to_string(e.seed) + ',' + std::to_string(e.size.width) +
          ',' + std::to_string(e.size.height) + ',' + std::to_string(e.attempt) + ',' + e.reason + '\n';
  }
  emit("exclusions.csv", ex);

  if (!res.summary.empty()) {
    std::string s = "size_w,size_h,metric,repr,count,mean,variance\n";
    for (const auto& r : res.summary) {
      s += std::to_string(r.size.width) + ',' + std::to_string(r.size.height) + ',' + metric_name(r.metric) + ',' +
           (r.repr ? repr_name(*r.repr) : "") + ',' + std::to_string(r.count) + ',' + format_value(r.mean) + ',' +
           format_value(r.variance) + '\n';
    }
    emit("summary.csv", s);
  }
  if (!res.matrices.empty()) {
    std::string s = "seed,metric,alternative,row_class,col_class,kind,value\n";
    for (const auto& m : res.matrices) {
      for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
          const bool diag = i == j;
          s += std::to_string(m.seed) + ',' + metric_name(m.metric) + ',' + alternative_name(m.alternative) + ',' +
               std::to_string(i + 1) + ',' + std::to_string(j + 1) + ',' + (diag ? "mean" : "p_value") + ',' +
               format_value(diag ? m.means[i] : m.p_values[i][j]) + '\n';
        }
      }
    }
    emit("matrix.csv", s);
  }
  if (!res.classes.empty()) {
    std::string s = "seed,id,class\n";
    for (const auto& c : res.classes) {
      s += std::to_string(c.seed) + ',' + std::to_string(c.id) + ',' + std::to_string(c.class_label) + '\n';
    }
    emit("classes.csv", s);
  }
  if (res.correlation) {
    const auto& c = *res.correlation;
    std::string s = "test,statistic,p_value,n1,n2,alternative\n";
    s += "pearson," + format_value(c.statistic) + ',' + format_value(c.p_value) + ',' + std::to_string(c.n1) + ',' +
         std::to_string(c.n2) + ',' + alternative_name(c.alternative) + '\n';
    emit("correlation.csv", s);
  }
  return written;
}

}  // namespace pcgeval
