#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <optional>
#include <utility>
#include <vector>

namespace pcgeval {

enum class Alternative { Less, Greater, TwoSided };

const char* alternative_name(Alternative a);
std::optional<Alternative> parse_alternative(std::string_view name);

struct StatReport {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  Alternative alternative = Alternative::TwoSided;
  bool exact = false;
};

// Pearson r with a two-sided p-value from Student's t on n - 2 degrees of
// freedom. Throws DegenerateInput for n < 3, unequal lengths or zero variance.
StatReport pearson(std::span<const double> xs, std::span<const double> ys);

// U statistic of `a` (midranks for ties). Less tests whether a tends to be
// smaller than b. Exact null distribution when |a| + |b| <= 12 with no ties,
// else the normal approximation with tie and continuity corrections.
StatReport mann_whitney_u(std::span<const double> a, std::span<const double> b, Alternative alternative);

inline constexpr std::size_t kExactMannWhitneyLimit = 12;

// All (i, j) with i < j < n in lexicographic order.
std::vector<std::pair<std::size_t, std::size_t>> pairwise_indices(std::size_t n);

double mean(std::span<const double> xs);
// Sample variance (n - 1 denominator); 0 for fewer than two values.
double variance(std::span<const double> xs);

}  // namespace pcgeval
