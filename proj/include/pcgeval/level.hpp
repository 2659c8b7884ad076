#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pcgeval {

enum class Domain { Maze, Platformer };

enum class Tile : std::uint8_t { Empty, Wall, Air, Ground, Brick, Goomba, Flag };

const char* domain_name(Domain d);
std::optional<Domain> parse_domain(std::string_view name);

// File code for a tile: '.', '#' for mazes and '-', 'X', 'B', 'g', 'F' for platformers.
char tile_code(Tile t);
std::optional<Tile> tile_from_code(char c, Domain d);
bool tile_legal(Tile t, Domain d);
// Wall, Ground and Brick block movement.
bool is_solid(Tile t);

// Rectangular level, row-major with origin at the top-left (x right, y down).
class TileGrid {
 public:
  TileGrid(int width, int height, Domain domain, std::vector<Tile> tiles);

  static TileGrid filled(int width, int height, Domain domain, Tile tile);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  Domain domain() const noexcept { return domain_; }
  std::span<const Tile> tiles() const noexcept { return tiles_; }

  bool in_bounds(int x, int y) const noexcept { return x >= 0 && y >= 0 && x < width_ && y < height_; }
  Tile at(int x, int y) const { return tiles_[index(x, y)]; }
  void set(int x, int y, Tile t);

  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  bool operator==(const TileGrid&) const = default;

 private:
  int width_;
  int height_;
  Domain domain_;
  std::vector<Tile> tiles_;
};

struct LevelSet {
  std::vector<TileGrid> levels;
  std::uint64_t seed = 0;
  std::string source_label;
};

TileGrid parse_level(std::string_view text, Domain domain);
std::string serialize_level(const TileGrid& grid);

// Row-major symbol string. Mazes emit the binary '0' (empty) / '1' (wall)
// string; platformer levels emit their file codes.
std::string flatten(const TileGrid& grid);

// Levels separated by one blank line; lines starting with '%' are comments.
// The writer records the seed and source label as "% seed: N" and
// "% source: text" comments, which the reader picks up when present.
LevelSet parse_level_set(std::string_view text, Domain domain);
std::string serialize_level_set(const LevelSet& set);

LevelSet read_level_set_file(const std::string& path, Domain domain);
// Reads a file holding exactly one level; '%' comment lines are allowed.
TileGrid read_level_file(const std::string& path, Domain domain);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace pcgeval
