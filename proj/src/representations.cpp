#include "pcgeval/representations.hpp"

#include "pcgeval/error.hpp"

namespace pcgeval {

const char* repr_name(Repr r) {
  switch (r) {
    case Repr::Normal: return "normal";
    case Repr::Concatenated: return "concatenated";
    case Repr::Flat: return "flat";
  }
  return "?";
}

std::optional<Repr> parse_repr(std::string_view name) {
  if (name == "normal") return Repr::Normal;
  if (name == "concatenated") return Repr::Concatenated;
  if (name == "flat") return Repr::Flat;
  return std::nullopt;
}

bool repr_allowed(Repr r, Domain d) { return d == Domain::Platformer || r == Repr::Flat; }

namespace {

void require_platformer(const TileGrid& grid) {
  if (grid.domain() != Domain::Platformer) {
    throw Error(ErrorCode::ReprDomainMismatch, "column representations are defined for platformer levels only");
  }
}

}  // namespace

int platform_height(const TileGrid& grid, int column) {
  int h = 0;
  for (int y = grid.height() - 1; y >= 0 && is_solid(grid.at(column, y)); --y) ++h;
  return h;
}

std::vector<ColumnFeatures> column_features(const TileGrid& grid) {
  require_platformer(grid);
  const int w = grid.width();
  std::vector<ColumnFeatures> cols(static_cast<std::size_t>(w));
  for (int x = 0; x < w; ++x) {
    auto& c = cols[static_cast<std::size_t>(x)];
    c.platform_height = platform_height(grid, x);
    c.in_gap = c.platform_height == 0;
    for (int y = 0; y < grid.height(); ++y) {
      if (grid.at(x, y) == Tile::Goomba) c.has_enemy = true;
    }
  }
  for (int x = 0; x < w; ++x) {
    auto& c = cols[static_cast<std::size_t>(x)];
    const bool prev_gap = x > 0 && cols[static_cast<std::size_t>(x - 1)].in_gap;
    const bool next_gap = x + 1 < w && cols[static_cast<std::size_t>(x + 1)].in_gap;
    if (c.in_gap) {
      c.gap_start = !prev_gap;
      c.gap_end = !next_gap;
    } else {
      c.near_gap = prev_gap || next_gap;
    }
    if (x > 0) {
      const int prev = cols[static_cast<std::size_t>(x - 1)].platform_height;
      if (c.platform_height > prev) c.height_delta = HeightDelta::Inc;
      else if (c.platform_height < prev) c.height_delta = HeightDelta::Dec;
    }
  }
  return cols;
}

std::string repr_normal(const TileGrid& grid) {
  std::string out;
  for (const auto& c : column_features(grid)) {
    if (c.in_gap) {
      if (c.gap_start && c.gap_end) out.push_back('m');
      else if (c.gap_start) out.push_back('n');
      else if (c.gap_end) out.push_back('p');
      else out.push_back('o');
    } else {
      out.push_back(static_cast<char>('a' + static_cast<int>(c.height_delta) * 4 + (c.near_gap ? 2 : 0) +
                                      (c.has_enemy ? 1 : 0)));
    }
  }
  return out;
}

std::string repr_concatenated(const TileGrid& grid) {
  const auto cols = column_features(grid);
  std::string heights;
  std::string enemies;
  for (std::size_t x = 0; x < cols.size(); ++x) {
    if (cols[x].platform_height > 9) {
      throw Error(ErrorCode::HeightOverflow, "column " + std::to_string(x) + " has platform height " +
                                                 std::to_string(cols[x].platform_height));
    }
    heights.push_back(static_cast<char>('0' + cols[x].platform_height));
    enemies.push_back(cols[x].has_enemy ? '1' : '0');
  }
  return heights + enemies;
}

std::string repr_flat(const TileGrid& grid) { return flatten(grid); }

std::string representation(const TileGrid& grid, Repr r) {
  if (!repr_allowed(r, grid.domain())) {
    throw Error(ErrorCode::ReprDomainMismatch,
                std::string(repr_name(r)) + " representation is not defined for " + domain_name(grid.domain()));
  }
  switch (r) {
    case Repr::Normal: return repr_normal(grid);
    case Repr::Concatenated: return repr_concatenated(grid);
    case Repr::Flat: return repr_flat(grid);
  }
  return {};
}

}  // namespace pcgeval
