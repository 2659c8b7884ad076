#include "pcgeval/stats.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pcgeval/error.hpp"

namespace pcgeval {

const char* alternative_name(Alternative a) {
  switch (a) {
    case Alternative::Less: return "less";
    case Alternative::Greater: return "greater";
    case Alternative::TwoSided: return "two-sided";
  }
  return "?";
}

std::optional<Alternative> parse_alternative(std::string_view name) {
  if (name == "less") return Alternative::Less;
  if (name == "greater") return Alternative::Greater;
  if (name == "two-sided" || name == "two_sided") return Alternative::TwoSided;
  return std::nullopt;
}

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

StatReport pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorCode::DegenerateInput, "pearson needs equal-length samples");
  const std::size_t n = xs.size();
  if (n < 3) throw Error(ErrorCode::DegenerateInput, "pearson needs at least 3 points");
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(ErrorCode::DegenerateInput, "pearson needs non-zero variance in both samples");

  StatReport rep;
  rep.n1 = rep.n2 = n;
  rep.alternative = Alternative::TwoSided;
  const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  rep.statistic = r;
  const double dof = static_cast<double>(n - 2);
  if (std::abs(r) >= 1.0) {
    rep.p_value = 0.0;
  } else {
    const double t = r * std::sqrt(dof / (1.0 - r * r));
    const boost::math::students_t dist(dof);
    rep.p_value = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
  }
  return rep;
}

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

// counts[u] = number of rank assignments giving U = u, for sizes n1, n2.
std::vector<double> u_distribution(std::size_t n1, std::size_t n2) {
  // f[i][j] over u, built bottom-up with f(i, j, u) = f(i-1, j, u-j) + f(i, j-1, u).
  const std::size_t umax = n1 * n2;
  std::vector<std::vector<std::vector<double>>> f(
      n1 + 1, std::vector<std::vector<double>>(n2 + 1, std::vector<double>(umax + 1, 0.0)));
  for (std::size_t i = 0; i <= n1; ++i) {
    for (std::size_t j = 0; j <= n2; ++j) {
      if (i == 0 || j == 0) {
        f[i][j][0] = 1.0;
        continue;
      }
      for (std::size_t u = 0; u <= i * j; ++u) {
        double v = f[i][j - 1][u];
        if (u >= j) v += f[i - 1][j][u - j];
        f[i][j][u] = v;
      }
    }
  }
  return f[n1][n2];
}

}  // namespace

StatReport mann_whitney_u(std::span<const double> a, std::span<const double> b, Alternative alternative) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::DegenerateInput, "mann-whitney needs non-empty samples");
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  const std::size_t n = n1 + n2;

  std::vector<std::pair<double, bool>> pooled;
  pooled.reserve(n);
  for (double v : a) pooled.emplace_back(v, true);
  for (double v : b) pooled.emplace_back(v, false);
  std::sort(pooled.begin(), pooled.end(), [](const auto& l, const auto& r) { return l.first < r.first; });

  double rank_sum_a = 0.0;
  double tie_term = 0.0;
  bool ties = false;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && pooled[j].first == pooled[i].first) ++j;
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    const double t = static_cast<double>(j - i);
    if (t > 1) {
      ties = true;
      tie_term += t * t * t - t;
    }
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].second) rank_sum_a += midrank;
    }
    i = j;
  }

  StatReport rep;
  rep.n1 = n1;
  rep.n2 = n2;
  rep.alternative = alternative;
  const double u = rank_sum_a - static_cast<double>(n1 * (n1 + 1)) / 2.0;
  rep.statistic = u;

  if (n <= kExactMannWhitneyLimit && !ties) {
    rep.exact = true;
    const auto counts = u_distribution(n1, n2);
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    const auto ui = static_cast<std::size_t>(std::llround(u));
    double le = 0.0, ge = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      if (k <= ui) le += counts[k];
      if (k >= ui) ge += counts[k];
    }
    le /= total;
    ge /= total;
    switch (alternative) {
      case Alternative::Less: rep.p_value = le; break;
      case Alternative::Greater: rep.p_value = ge; break;
      case Alternative::TwoSided: rep.p_value = std::min(1.0, 2.0 * std::min(le, ge)); break;
    }
    return rep;
  }

  const double nn = static_cast<double>(n);
  const double mu = static_cast<double>(n1 * n2) / 2.0;
  const double var = static_cast<double>(n1 * n2) / 12.0 * ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
  if (var <= 0.0) {
    rep.p_value = 1.0;
    return rep;
  }
  const double sd = std::sqrt(var);
  switch (alternative) {
    case Alternative::Less: rep.p_value = normal_cdf((u - mu + 0.5) / sd); break;
    case Alternative::Greater: rep.p_value = normal_sf((u - mu - 0.5) / sd); break;
    case Alternative::TwoSided: {
      const double big = std::max(u, static_cast<double>(n1 * n2) - u);
      rep.p_value = 2.0 * normal_sf((big - mu - 0.5) / sd);
      break;
    }
  }
  rep.p_value = std::clamp(rep.p_value, 0.0, 1.0);
  return rep;
}

std::vector<std::pair<std::size_t, std::size_t>> pairwise_indices(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "pairwise comparisons need at least 2 items");
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.emplace_back(i, j);
  }
  return out;
}

}  // namespace pcgeval
