#pragma once

// Shape predicates and constructive generators for the picture families,
// independent of the grammar engine.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hags/hexgrid.hpp"

namespace hags {

struct ArrowheadShape {
  int lu_arm = 0;  // cells beyond the apex, NE chain
  int ll_arm = 0;  // cells beyond the apex, SE chain
  friend bool operator==(const ArrowheadShape&, const ArrowheadShape&) = default;
};

struct HexFrameShape {
  int side = 0;
  friend bool operator==(const HexFrameShape&, const HexFrameShape&) = default;
};

/// Side lengths in cells. For hexagons on the grid LU = RL, RU = LL, U = L.
struct HexagonShape {
  int lu = 0, ru = 0, rl = 0, ll = 0, l = 0, u = 0;
  friend bool operator==(const HexagonShape&, const HexagonShape&) = default;
};

/// Thick arrowhead: 2*arm+1 rows of `width` cells, row starts staggered
/// like an arrowhead, border a, interior b, middle row all a.
struct Thm2Shape {
  int arm = 0;
  int width = 0;
  friend bool operator==(const Thm2Shape&, const Thm2Shape&) = default;
};

std::optional<ArrowheadShape> match_arrowhead(const HexPicture& p);
std::optional<HexFrameShape> match_hex_frame(const HexPicture& p);
/// Boundary of a hexagon with three independent side lengths.
std::optional<HexagonShape> match_general_hex_frame(const HexPicture& p);
std::optional<HexagonShape> match_solid_hexagon(const HexPicture& p);
std::optional<Thm2Shape> match_thm2_arrowhead(const HexPicture& p);

CanonicalPicture make_arrowhead(ArrowheadShape s);
CanonicalPicture make_hex_frame(HexFrameShape s);
/// a, b, c are the LU, U and LL side lengths minus one.
CanonicalPicture make_solid_hexagon(int a, int b, int c);
CanonicalPicture make_general_hex_frame(int a, int b, int c);
CanonicalPicture make_thm2_arrowhead(Thm2Shape s);

enum class OracleFamily {
  kArrowheadAny,
  kArrowheadEqual,
  kHexFrame,
  kHexFrameGeneral,
  kSolidHexagon,
  kThm2Arrowhead,
};

std::string_view to_string(OracleFamily f);
std::optional<OracleFamily> parse_oracle_family(std::string_view name);
const std::vector<OracleFamily>& all_oracle_families();

bool family_contains(OracleFamily f, const HexPicture& p);

/// Every family member with at most max_cells cells, sorted with listing_less.
std::vector<CanonicalPicture> oracle_language(OracleFamily f, std::size_t max_cells);

struct LanguageDiff {
  std::vector<CanonicalPicture> only_a;
  std::vector<CanonicalPicture> only_b;
  std::size_t common = 0;

  bool empty() const { return only_a.empty() && only_b.empty(); }
};

LanguageDiff compare_languages(std::vector<CanonicalPicture> a, std::vector<CanonicalPicture> b);

}  // namespace hags
