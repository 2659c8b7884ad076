#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "pcgeval/error.hpp"
#include "pcgeval/experiments.hpp"
#include "pcgeval/generators.hpp"

using namespace pcgeval;

namespace {

ExperimentConfig config(std::string_view text) { return build_config({parse_config_text(text)}); }

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Config, Defaults) {
  auto cfg = build_config({});
  EXPECT_EQ(cfg.experiment, ExperimentKind::DiversityDistribution);
  EXPECT_EQ(cfg.domain, Domain::Maze);
  EXPECT_EQ(cfg.n_levels, 100);
  EXPECT_EQ(cfg.seeds, (std::vector<std::uint64_t>{1, 2, 3, 4, 5}));
  EXPECT_EQ(effective_reprs(cfg), std::vector<Repr>{Repr::Flat});
}

TEST(Config, ParsesKeysListsAndComments) {
  auto cfg = config(R"(# sweep
experiment = SizeSweep
domain=platformer
sizes = 10, 20x14 ,30x8   # trailing comment
seeds=7,8
reprs=normal,flat
manhattan=true
wall_prob=0.25
threads=2
)");
  EXPECT_EQ(cfg.experiment, ExperimentKind::SizeSweep);
  EXPECT_EQ(cfg.domain, Domain::Platformer);
  EXPECT_EQ(cfg.sizes, (std::vector<LevelSize>{{10, 10}, {20, 14}, {30, 8}}));
  EXPECT_EQ(cfg.seeds, (std::vector<std::uint64_t>{7, 8}));
  EXPECT_EQ(cfg.reprs, (std::vector<Repr>{Repr::Normal, Repr::Flat}));
  EXPECT_TRUE(cfg.manhattan);
  EXPECT_DOUBLE_EQ(cfg.wall_prob, 0.25);
  EXPECT_EQ(cfg.threads, 2u);
}

TEST(Config, LaterLayersOverride) {
  auto cfg = build_config({parse_config_text("n_levels=10\nseeds=1"), parse_config_text("n_levels=20")});
  EXPECT_EQ(cfg.n_levels, 20);
  EXPECT_EQ(cfg.seeds, std::vector<std::uint64_t>{1});
}

TEST(Config, TextRoundTrip) {
  auto cfg = config("experiment=DifficultyOrdering\nsizes=41\nseeds=1,2,3\nper_class=7\nbudget=5000");
  auto again = config(config_to_text(cfg));
  EXPECT_EQ(config_to_text(again), config_to_text(cfg));
  EXPECT_EQ(again.per_class, 7);
  EXPECT_EQ(again.budget, 5000u);
}

TEST(Config, Errors) {
  for (const char* bad : {"colour=blue", "n_levels=ten", "n_levels=0", "domain=space", "reprs=normal", "sizes=",
                          "wall_prob=1.5", "manhattan=maybe", "experiment=Nope", "no equals sign", "=3", "seeds=1,x",
                          "wall_prob=0.3abc"}) {
    try {
      config(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ConfigError) << bad;
    }
  }
}

TEST(Csv, FormatsRows) {
  EXPECT_EQ(csv_header(), "experiment,domain,seed,size_w,size_h,metric,repr,id_a,id_b,value");
  CsvRow pair{"DiversityDistribution", Domain::Maze, 3, 20, 20, Metric::CD, Repr::Flat, 0, 5, 0.25};
  EXPECT_EQ(format_row(pair), "DiversityDistribution,maze,3,20,20,CD,flat,0,5,0.25");
  CsvRow single{"DifficultyOrdering", Domain::Maze, 1, 41, 41, Metric::Leniency, std::nullopt, 7, std::nullopt, 0.5};
  EXPECT_EQ(format_row(single), "DifficultyOrdering,maze,1,41,41,Leniency,,7,,0.5");
  EXPECT_EQ(rows_to_csv({pair, single}), csv_header() + "\n" + format_row(pair) + "\n" + format_row(single) + "\n");
}

TEST(Csv, ValuesRoundTrip) {
  for (double v : {0.0, 1.0, 0.1, 1.0 / 3.0, 2.0 / 7.0, 1e-17, 0.987654321}) {
    EXPECT_EQ(std::stod(format_value(v)), v);
  }
  EXPECT_EQ(format_value(0.5), "0.5");
}

TEST(Corpus, CollectsSolvableLevelsAndRecordsExclusions) {
  auto cfg = config("n_levels=15\nseeds=1");
  auto corpus = generate_solvable_corpus(cfg, {20, 20}, 1, "DiversityDistribution");
  ASSERT_EQ(corpus.levels.size(), 15u);
  ASSERT_EQ(corpus.traces.size(), 15u);
  for (const auto& g : corpus.levels) EXPECT_TRUE(is_solvable(g));
  std::set<std::size_t> attempts;
  for (const auto& e : corpus.exclusions) {
    EXPECT_EQ(e.reason, "unsolvable");
    attempts.insert(e.attempt);
  }
  EXPECT_EQ(attempts.size(), corpus.exclusions.size());
}

TEST(Corpus, GivesUpAfterAttemptLimit) {
  auto cfg = config("n_levels=5\nwall_prob=0.9\nmax_attempts_factor=2");
  auto corpus = generate_solvable_corpus(cfg, {20, 20}, 1, "x");
  EXPECT_EQ(corpus.levels.size() + corpus.exclusions.size(), 10u);
  cfg.seeds = {1};
  try {
    run_diversity_distribution(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientSolvable);
  }
}

TEST(Pairwise, RowCountsAndOrder) {
  auto cfg = config("n_levels=12\nseeds=4\ndomain=platformer\nsizes=40x14\nmanhattan=true");
  auto res = run_diversity_distribution(cfg);
  // CD for 3 reprs, A* diversity, Manhattan diversity
  ASSERT_EQ(res.rows.size(), 5u * 66u);
  const Metric order[] = {Metric::CD, Metric::CD, Metric::CD, Metric::AStarDiversity, Metric::ManhattanDiversity};
  for (std::size_t g = 0; g < 5; ++g) {
    EXPECT_EQ(res.rows[g * 66].metric, order[g]);
    EXPECT_EQ(res.rows[g * 66].id_a, 0u);
    EXPECT_EQ(res.rows[g * 66].id_b, 1u);
    EXPECT_EQ(res.rows[g * 66 + 65].id_a, 10u);
    EXPECT_EQ(res.rows[g * 66 + 65].id_b, 11u);
  }
  EXPECT_EQ(res.rows[0].repr, Repr::Normal);
  EXPECT_EQ(res.rows[66].repr, Repr::Concatenated);
  EXPECT_EQ(res.rows[132].repr, Repr::Flat);
  for (const auto& r : res.rows) {
    EXPECT_TRUE(std::isfinite(r.value));
    EXPECT_GE(r.value, 0.0);
  }
}

TEST(Pairwise, MatchesDirectMetrics) {
  auto cfg = config("n_levels=6\nseeds=2");
  auto corpus = generate_solvable_corpus(cfg, {20, 20}, 2, "x");
  PairwiseOptions opts{{Repr::Flat}, true, true, 1};
  auto samples = pairwise_samples(corpus.levels, corpus.traces, opts);
  ASSERT_EQ(samples.size(), 45u);
  for (const auto& s : samples) {
    const auto& a = corpus.levels[s.id_a];
    const auto& b = corpus.levels[*s.id_b];
    switch (s.metric) {
      case Metric::CD: EXPECT_DOUBLE_EQ(s.value, compression_distance(a, b, Repr::Flat)); break;
      case Metric::AStarDiversity: EXPECT_DOUBLE_EQ(s.value, astar_diversity(solve_maze(a), solve_maze(b))); break;
      case Metric::ManhattanDiversity:
        EXPECT_DOUBLE_EQ(s.value, manhattan_diversity(solve_maze(a), solve_maze(b)));
        break;
      default: ADD_FAILURE();
    }
  }
}

TEST(Pairwise, DuplicatesHaveZeroTrajectoryDiversity) {
  auto base = gen_maze_with_difficulty(15, 15, 2, 3);
  std::vector<TileGrid> levels(6, base);
  auto trace = trace_level(base, kDefaultBudget);
  ASSERT_TRUE(trace.trace);
  std::vector<LevelTrace> traces(6, *trace.trace);
  for (const auto& s : pairwise_samples(levels, traces, {{}, true, true, 2})) EXPECT_EQ(s.value, 0.0);
}

TEST(Pairwise, IndependentOfThreadCount) {
  auto base = config("n_levels=20\nseeds=5\nmanhattan=true\nthreads=1");
  auto parallel = base;
  parallel.threads = 4;
  EXPECT_EQ(rows_to_csv(run_diversity_distribution(base).rows), rows_to_csv(run_diversity_distribution(parallel).rows));
}

TEST(SizeSweep, SummaryPerSizeAndMetric) {
  auto cfg = config("experiment=SizeSweep\nsizes=10,16\nn_levels=8\nseeds=1,2");
  auto res = run_size_sweep(cfg);
  ASSERT_EQ(res.summary.size(), 4u);
  for (const auto& s : res.summary) EXPECT_EQ(s.count, 2u * 28u);
  EXPECT_EQ(res.summary[0].size, (LevelSize{10, 10}));
  EXPECT_EQ(res.summary[3].size, (LevelSize{16, 16}));
  EXPECT_THROW(run_size_sweep(config("experiment=SizeSweep\nsizes=10")), Error);
}

TEST(VisualVariation, VariantsShareTrajectories) {
  auto cfg = config("experiment=VisualVariation\nsizes=20\nn_variants=8\nseeds=3");
  auto res = run_visual_variation(cfg);
  std::size_t variant_cd = 0, control_cd = 0;
  for (const auto& r : res.rows) {
    if (r.metric == Metric::AStarDiversity) EXPECT_EQ(r.value, 0.0);
    if (r.experiment == "VisualVariation" && r.metric == Metric::CD) ++variant_cd;
    if (r.experiment == "VisualVariationControl") {
      EXPECT_EQ(r.metric, Metric::CD);
      ++control_cd;
    }
  }
  EXPECT_EQ(variant_cd, 28u);
  EXPECT_EQ(control_cd, 28u);
}

TEST(DifficultyOrdering, MatricesAndLabels) {
  auto cfg = config("experiment=DifficultyOrdering\nsizes=21\nper_class=4\nseeds=1");
  auto res = run_difficulty_ordering(cfg);
  EXPECT_EQ(res.classes.size(), 20u);
  EXPECT_EQ(res.rows.size(), 40u);
  ASSERT_EQ(res.matrices.size(), 2u);
  EXPECT_EQ(res.matrices[0].metric, Metric::AStarDifficulty);
  EXPECT_EQ(res.matrices[0].alternative, Alternative::Less);
  EXPECT_EQ(res.matrices[1].metric, Metric::Leniency);
  for (const auto& m : res.matrices) {
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_TRUE(std::isnan(m.p_values[i][i]));
      for (std::size_t j = 0; j < 5; ++j) {
        if (i != j) EXPECT_TRUE(m.p_values[i][j] >= 0.0 && m.p_values[i][j] <= 1.0);
      }
    }
  }
  EXPECT_THROW(run_difficulty_ordering(config("experiment=DifficultyOrdering\ndomain=platformer")), Error);
}

TEST(DifficultyCorrelation, NeedsHundredLevels) {
  try {
    run_difficulty_correlation(config("experiment=DifficultyCorrelation\nn_levels=10\nseeds=1"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientSolvable);
  }
  auto res = run_difficulty_correlation(config("experiment=DifficultyCorrelation\nn_levels=50\nseeds=1,2\nsizes=12"));
  ASSERT_TRUE(res.correlation);
  EXPECT_EQ(res.correlation->n1, 100u);
  EXPECT_EQ(res.rows.size(), 200u);
}

TEST(DifficultyCorrelation, ConstantMetricIsDegenerate) {
  std::vector<LevelScores> scores(5, LevelScores{0.2, 0.4});
  EXPECT_THROW(difficulty_leniency_correlation(scores), Error);
}

TEST(Outputs, WritesExpectedFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "pcgeval_test_outputs";
  std::filesystem::remove_all(dir);
  auto cfg = config("experiment=DifficultyOrdering\nsizes=11\nper_class=3\nseeds=1");
  cfg.output_dir = dir.string();
  auto paths = write_experiment_outputs(run_experiment(cfg), cfg);
  std::set<std::string> names;
  for (const auto& p : paths) names.insert(std::filesystem::path(p).filename().string());
  EXPECT_EQ(names, (std::set<std::string>{"samples.csv", "exclusions.csv", "matrix.csv", "classes.csv"}));
  EXPECT_EQ(line_count(read_file(dir / "samples.csv")), 1u + 30u);
  EXPECT_EQ(line_count(read_file(dir / "classes.csv")), 1u + 15u);
  EXPECT_EQ(line_count(read_file(dir / "matrix.csv")), 1u + 2u * 25u);
  EXPECT_EQ(line_count(read_file(dir / "exclusions.csv")), 1u);
  std::filesystem::remove_all(dir);
}

TEST(Outputs, RerunIsByteIdentical) {
  auto cfg = config("n_levels=10\nseeds=1,2");
  EXPECT_EQ(rows_to_csv(run_experiment(cfg).rows), rows_to_csv(run_experiment(cfg).rows));
}
