#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcgeval/level.hpp"

namespace pcgeval {

enum class Repr { Normal, Concatenated, Flat };

const char* repr_name(Repr r);
std::optional<Repr> parse_repr(std::string_view name);
bool repr_allowed(Repr r, Domain d);

enum class HeightDelta { Flat, Inc, Dec };

struct ColumnFeatures {
  int platform_height = 0;
  HeightDelta height_delta = HeightDelta::Flat;
  bool gap_start = false;
  bool gap_end = false;
  bool in_gap = false;
  // Next to a gap column on either side.
  bool near_gap = false;
  bool has_enemy = false;
};

// Height of the solid stack rising from the bottom row: the number of
// consecutive Ground/Brick tiles counted upward from the last row. Floating
// solids above an air tile do not count, so decoration cannot change it.
int platform_height(const TileGrid& grid, int column);

std::vector<ColumnFeatures> column_features(const TileGrid& grid);

// One symbol per column from a 16-letter alphabet 'a'..'p':
//   solid columns:  'a' + delta*4 + near_gap*2 + has_enemy   (delta Flat=0, Inc=1, Dec=2)
//   gap columns:    'm' single-column gap, 'n' start, 'o' middle, 'p' end
// Column 0 always has delta Flat. A gap column has platform height 0.
std::string repr_normal(const TileGrid& grid);

// Per-column platform-height digits followed by per-column enemy bits.
// Throws HeightOverflow for heights above 9.
std::string repr_concatenated(const TileGrid& grid);

std::string repr_flat(const TileGrid& grid);

// Dispatches on r; throws ReprDomainMismatch when r is not defined for the grid's domain.
std::string representation(const TileGrid& grid, Repr r);

}  // namespace pcgeval
