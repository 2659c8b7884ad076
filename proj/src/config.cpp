#include "pcgeval/config.hpp"

#include <charconv>
#include <sstream>

#include "pcgeval/error.hpp"

namespace pcgeval {

const char* experiment_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::DiversityDistribution: return "DiversityDistribution";
    case ExperimentKind::SizeSweep: return "SizeSweep";
    case ExperimentKind::VisualVariation: return "VisualVariation";
    case ExperimentKind::DifficultyOrdering: return "DifficultyOrdering";
    case ExperimentKind::DifficultyCorrelation: return "DifficultyCorrelation";
  }
  return "?";
}

std::vector<Repr> effective_reprs(const ExperimentConfig& cfg) {
  if (!cfg.reprs.empty()) return cfg.reprs;
  if (cfg.domain == Domain::Maze) return {Repr::Flat};
  return {Repr::Normal, Repr::Concatenated, Repr::Flat};
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    auto item = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void bad_value(const std::string& key, std::string_view value) {
  throw Error(ErrorCode::ConfigError, "bad value '" + std::string(value) + "' for key '" + key + "'");
}

template <class T>
T parse_number(const std::string& key, std::string_view v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v);
  return out;
}

double parse_real(const std::string& key, std::string_view v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(std::string(v), &used);
    if (used != v.size()) bad_value(key, v);
    return d;
  } catch (const std::logic_error&) {
    bad_value(key, v);
  }
}

LevelSize parse_size(const std::string& key, std::string_view v) {
  const std::size_t x = v.find('x');
  if (x == std::string_view::npos) {
    const int side = parse_number<int>(key, v);
    return {side, side};
  }
  return {parse_number<int>(key, trim(v.substr(0, x))), parse_number<int>(key, trim(v.substr(x + 1)))};
}

}  // namespace

ConfigMap parse_config_text(std::string_view text) {
  ConfigMap map;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": expected key=value");
    }
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw Error(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": empty key");
    map[std::string(key)] = std::string(trim(line.substr(eq + 1)));
  }
  return map;
}

ExperimentConfig build_config(const std::vector<ConfigMap>& layers) {
  ExperimentConfig cfg;
  for (const auto& layer : layers) {
    for (const auto& [key, value] : layer) {
      if (key == "experiment") {
        bool found = false;
        for (auto k : {ExperimentKind::DiversityDistribution, ExperimentKind::SizeSweep, ExperimentKind::VisualVariation,
                       ExperimentKind::DifficultyOrdering, ExperimentKind::DifficultyCorrelation}) {
          if (value == experiment_name(k)) {
            cfg.experiment = k;
            found = true;
          }
        }
        if (!found) bad_value(key, value);
      } else if (key == "domain") {
        auto d = parse_domain(value);
        if (!d) bad_value(key, value);
        cfg.domain = *d;
      } else if (key == "sizes") {
        cfg.sizes.clear();
        for (auto item : split_list(value)) cfg.sizes.push_back(parse_size(key, item));
      } else if (key == "n_levels") {
        cfg.n_levels = parse_number<int>(key, value);
      } else if (key == "seeds") {
        cfg.seeds.clear();
        for (auto item : split_list(value)) cfg.seeds.push_back(parse_number<std::uint64_t>(key, item));
      } else if (key == "reprs") {
        cfg.reprs.clear();
        for (auto item : split_list(value)) {
          auto r = parse_repr(item);
          if (!r) bad_value(key, item);
          cfg.reprs.push_back(*r);
        }
      } else if (key == "output_dir") {
        cfg.output_dir = value;
      } else if (key == "budget") {
        cfg.budget = parse_number<std::size_t>(key, value);
      } else if (key == "wall_prob") {
        cfg.wall_prob = parse_real(key, value);
      } else if (key == "gap_rate") {
        cfg.gap_rate = parse_real(key, value);
      } else if (key == "enemy_rate") {
        cfg.enemy_rate = parse_real(key, value);
      } else if (key == "step_rate") {
        cfg.step_rate = parse_real(key, value);
      } else if (key == "brick_rate") {
        cfg.brick_rate = parse_real(key, value);
      } else if (key == "n_variants") {
        cfg.n_variants = parse_number<int>(key, value);
      } else if (key == "per_class") {
        cfg.per_class = parse_number<int>(key, value);
      } else if (key == "manhattan") {
        if (value == "true" || value == "1") cfg.manhattan = true;
        else if (value == "false" || value == "0") cfg.manhattan = false;
        else bad_value(key, value);
      } else if (key == "max_attempts_factor") {
        cfg.max_attempts_factor = parse_number<int>(key, value);
      } else if (key == "threads") {
        cfg.threads = parse_number<unsigned>(key, value);
      } else {
        throw Error(ErrorCode::ConfigError, "unknown key '" + key + "'");
      }
    }
  }

  if (cfg.sizes.empty()) throw Error(ErrorCode::ConfigError, "sizes must not be empty");
  if (cfg.seeds.empty()) throw Error(ErrorCode::ConfigError, "seeds must not be empty");
  for (const auto& s : cfg.sizes) {
    if (s.width < 1 || s.height < 1) throw Error(ErrorCode::ConfigError, "sizes must be positive");
  }
  for (Repr r : cfg.reprs) {
    if (!repr_allowed(r, cfg.domain)) {
      throw Error(ErrorCode::ConfigError, std::string(repr_name(r)) + " is not defined for " + domain_name(cfg.domain));
    }
  }
  if (cfg.n_levels < 1 || cfg.n_variants < 1 || cfg.per_class < 1 || cfg.max_attempts_factor < 1 || cfg.budget < 1) {
    throw Error(ErrorCode::ConfigError, "counts must be positive");
  }
  if (!(cfg.wall_prob >= 0.0 && cfg.wall_prob < 1.0)) throw Error(ErrorCode::ConfigError, "wall_prob must be in [0, 1)");
  if (cfg.output_dir.empty()) throw Error(ErrorCode::ConfigError, "output_dir must not be empty");
  return cfg;
}

std::string config_to_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "experiment=" << experiment_name(cfg.experiment) << '\n';
  out << "domain=" << domain_name(cfg.domain) << '\n';
  out << "sizes=";
  for (std::size_t i = 0; i < cfg.sizes.size(); ++i) out << (i ? "," : "") << cfg.sizes[i].width << 'x' << cfg.sizes[i].height;
  out << "\nn_levels=" << cfg.n_levels << "\nseeds=";
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) out << (i ? "," : "") << cfg.seeds[i];
  out << "\nreprs=";
  const auto reprs = effective_reprs(cfg);
  for (std::size_t i = 0; i < reprs.size(); ++i) out << (i ? "," : "") << repr_name(reprs[i]);
  out << "\noutput_dir=" << cfg.output_dir << "\nbudget=" << cfg.budget << "\nwall_prob=" << cfg.wall_prob
      << "\ngap_rate=" << cfg.gap_rate << "\nenemy_rate=" << cfg.enemy_rate << "\nstep_rate=" << cfg.step_rate
      << "\nbrick_rate=" << cfg.brick_rate << "\nn_variants=" << cfg.n_variants << "\nper_class=" << cfg.per_class
      << "\nmanhattan=" << (cfg.manhattan ? "true" : "false") << "\nmax_attempts_factor=" << cfg.max_attempts_factor
      << "\nthreads=" << cfg.threads << '\n';
  return out.str();
}

}  // namespace pcgeval
