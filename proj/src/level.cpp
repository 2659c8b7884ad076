#include "pcgeval/level.hpp"

#include <fstream>
#include <sstream>

#include "pcgeval/error.hpp"

namespace pcgeval {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::RaggedLines: return "RaggedLines";
    case ErrorCode::UnknownTileCode: return "UnknownTileCode";
    case ErrorCode::EmptyLevel: return "EmptyLevel";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::BlockedEndpoint: return "BlockedEndpoint";
    case ErrorCode::NotSolved: return "NotSolved";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ReprDomainMismatch: return "ReprDomainMismatch";
    case ErrorCode::UnsolvedLevel: return "UnsolvedLevel";
    case ErrorCode::InvalidDenominator: return "InvalidDenominator";
    case ErrorCode::Unsolvable: return "Unsolvable";
    case ErrorCode::HeightOverflow: return "HeightOverflow";
    case ErrorCode::BadDimensions: return "BadDimensions";
    case ErrorCode::UnsolvableBase: return "UnsolvableBase";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::InsufficientSolvable: return "InsufficientSolvable";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

const char* domain_name(Domain d) { return d == Domain::Maze ? "maze" : "platformer"; }

std::optional<Domain> parse_domain(std::string_view name) {
  if (name == "maze") return Domain::Maze;
  if (name == "platformer") return Domain::Platformer;
  return std::nullopt;
}

char tile_code(Tile t) {
  switch (t) {
    case Tile::Empty: return '.';
    case Tile::Wall: return '#';
    case Tile::Air: return '-';
    case Tile::Ground: return 'X';
    case Tile::Brick: return 'B';
    case Tile::Goomba: return 'g';
    case Tile::Flag: return 'F';
  }
  return '?';
}

std::optional<Tile> tile_from_code(char c, Domain d) {
  if (d == Domain::Maze) {
    switch (c) {
      case '.': return Tile::Empty;
      case '#': return Tile::Wall;
      default: return std::nullopt;
    }
  }
  switch (c) {
    case '-': return Tile::Air;
    case 'X': return Tile::Ground;
    case 'B': return Tile::Brick;
    case 'g': return Tile::Goomba;
    case 'F': return Tile::Flag;
    default: return std::nullopt;
  }
}

bool tile_legal(Tile t, Domain d) {
  if (d == Domain::Maze) return t == Tile::Empty || t == Tile::Wall;
  return t != Tile::Empty && t != Tile::Wall;
}

bool is_solid(Tile t) { return t == Tile::Wall || t == Tile::Ground || t == Tile::Brick; }

TileGrid::TileGrid(int width, int height, Domain domain, std::vector<Tile> tiles)
    : width_(width), height_(height), domain_(domain), tiles_(std::move(tiles)) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::BadDimensions, "grid dimensions must be positive");
  }
  if (tiles_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::BadDimensions, "tile count does not match width x height");
  }
  for (Tile t : tiles_) {
    if (!tile_legal(t, domain)) {
      throw Error(ErrorCode::DomainMismatch, std::string("tile '") + tile_code(t) + "' is illegal for " + domain_name(domain));
    }
  }
}

TileGrid TileGrid::filled(int width, int height, Domain domain, Tile tile) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::BadDimensions, "grid dimensions must be positive");
  }
  return TileGrid(width, height, domain,
                  std::vector<Tile>(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), tile));
}

void TileGrid::set(int x, int y, Tile t) {
  if (!tile_legal(t, domain_)) {
    throw Error(ErrorCode::DomainMismatch, std::string("tile '") + tile_code(t) + "' is illegal for " + domain_name(domain_));
  }
  tiles_[index(x, y)] = t;
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return lines;
}

TileGrid parse_rows(const std::vector<std::string_view>& rows, Domain domain, int first_line) {
  if (rows.empty() || rows.front().empty()) {
    throw Error(ErrorCode::EmptyLevel, "level has no rows");
  }
  const std::size_t width = rows.front().size();
  std::vector<Tile> tiles;
  tiles.reserve(width * rows.size());
  for (std::size_t y = 0; y < rows.size(); ++y) {
    if (rows[y].size() != width) {
      throw Error(ErrorCode::RaggedLines, "line " + std::to_string(first_line + static_cast<int>(y) + 1) + " has length " +
                                              std::to_string(rows[y].size()) + ", expected " + std::to_string(width));
    }
    for (std::size_t x = 0; x < width; ++x) {
      auto t = tile_from_code(rows[y][x], domain);
      if (!t) {
        throw Error(ErrorCode::UnknownTileCode, std::string("'") + rows[y][x] + "' at row " + std::to_string(y) +
                                                    ", col " + std::to_string(x) + " is not a " + domain_name(domain) +
                                                    " tile");
      }
      tiles.push_back(*t);
    }
  }
  return TileGrid(static_cast<int>(width), static_cast<int>(rows.size()), domain, std::move(tiles));
}

}  // namespace

TileGrid parse_level(std::string_view text, Domain domain) {
  auto lines = split_lines(text);
  if (!lines.empty() && lines.back().empty()) lines.pop_back();  // trailing newline
  return parse_rows(lines, domain, 0);
}

std::string serialize_level(const TileGrid& grid) {
  std::string out;
  out.reserve(static_cast<std::size_t>((grid.width() + 1) * grid.height()));
  for (int y = 0; y < grid.height(); ++y) {
    if (y > 0) out.push_back('\n');
    for (int x = 0; x < grid.width(); ++x) out.push_back(tile_code(grid.at(x, y)));
  }
  return out;
}

std::string flatten(const TileGrid& grid) {
  std::string out;
  out.reserve(grid.tiles().size());
  for (Tile t : grid.tiles()) {
    if (grid.domain() == Domain::Maze) {
      out.push_back(t == Tile::Wall ? '1' : '0');
    } else {
      out.push_back(tile_code(t));
    }
  }
  return out;
}

LevelSet parse_level_set(std::string_view text, Domain domain) {
  LevelSet set;
  std::vector<std::string_view> block;
  int block_start = 0;
  int line_no = 0;
  auto flush = [&] {
    if (!block.empty()) set.levels.push_back(parse_rows(block, domain, block_start));
    block.clear();
  };
  for (std::string_view line : split_lines(text)) {
    if (!line.empty() && line.front() == '%') {
      std::string_view body = line.substr(1);
      while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      if (body.starts_with("seed:")) {
        set.seed = std::stoull(std::string(body.substr(5)));
      } else if (body.starts_with("source:")) {
        body.remove_prefix(7);
        while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
        set.source_label = std::string(body);
      }
    } else if (line.empty()) {
      flush();
    } else {
      if (block.empty()) block_start = line_no;
      block.push_back(line);
    }
    ++line_no;
  }
  flush();
  return set;
}

std::string serialize_level_set(const LevelSet& set) {
  std::ostringstream out;
  if (!set.source_label.empty()) out << "% source: " << set.source_label << '\n';
  out << "% seed: " << set.seed << '\n';
  for (std::size_t i = 0; i < set.levels.size(); ++i) {
    if (i > 0) out << '\n';
    out << serialize_level(set.levels[i]) << '\n';
  }
  return out.str();
}

namespace {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

LevelSet read_level_set_file(const std::string& path, Domain domain) {
  return parse_level_set(read_text_file(path), domain);
}

TileGrid read_level_file(const std::string& path, Domain domain) {
  LevelSet set = parse_level_set(read_text_file(path), domain);
  if (set.levels.size() != 1) {
    throw Error(ErrorCode::InvalidArgument, path + " holds " + std::to_string(set.levels.size()) + " levels, expected one");
  }
  return std::move(set.levels.front());
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace pcgeval
