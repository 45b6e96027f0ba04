#pragma once

// Axial coordinates, pictures over the hexagonal grid, and the staggered text
// format used for .hpic files.

#include <array>
#include <compare>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hags {

using Symbol = std::string;

/// Reserved blank marker. Never stored in a picture: a blank is an absent cell.
inline constexpr std::string_view kBlank = "#";

/// Axial coordinate: q grows east, r grows south-east.
struct HexCoord {
  int q = 0;
  int r = 0;

  friend constexpr bool operator==(HexCoord, HexCoord) = default;
  // Row-major: r first, then q.
  friend constexpr std::strong_ordering operator<=>(HexCoord a, HexCoord b) {
    if (auto c = a.r <=> b.r; c != 0) return c;
    return a.q <=> b.q;
  }
  friend constexpr HexCoord operator+(HexCoord a, HexCoord b) { return {a.q + b.q, a.r + b.r}; }
  friend constexpr HexCoord operator-(HexCoord a, HexCoord b) { return {a.q - b.q, a.r - b.r}; }
};

std::string to_string(HexCoord c);

enum class Direction { E, NE, NW, W, SW, SE };

inline constexpr std::array<HexCoord, 6> kDirectionOffsets{{
    {1, 0},   // E
    {1, -1},  // NE
    {0, -1},  // NW
    {-1, 0},  // W
    {-1, 1},  // SW
    {0, 1},   // SE
}};

constexpr HexCoord offset(Direction d) { return kDirectionOffsets[static_cast<std::size_t>(d)]; }

/// The six neighbours in the order E, NE, NW, W, SW, SE.
std::array<HexCoord, 6> neighbors(HexCoord c);

/// True iff `cells` is non-empty and forms a single 6-connected component.
bool is_connected(std::span<const HexCoord> cells);

struct Cell {
  HexCoord at;
  Symbol symbol;

  friend bool operator==(const Cell&, const Cell&) = default;
};

enum class PictureErrc {
  kEmpty,
  kDisconnected,
  kBlankSymbol,
  kBadSymbol,
  kDuplicateCell,
  kParity,
  kBadLegend,
};

class PictureError : public std::runtime_error {
 public:
  PictureError(PictureErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  PictureErrc code() const noexcept { return code_; }

 private:
  PictureErrc code_;
};

/// A finite, non-empty, connected labelling of grid cells. Cells are kept
/// sorted row-major so equality is structural.
class HexPicture {
 public:
  /// Validates and sorts. Throws PictureError.
  explicit HexPicture(std::vector<Cell> cells);

  /// Skips validation; `sorted_cells` must already satisfy every invariant
  /// and be sorted row-major. Used on hot paths of the engine.
  static HexPicture from_trusted(std::vector<Cell> sorted_cells);

  std::span<const Cell> cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }

  /// Symbol at `c`, or nullptr when the position is blank.
  const Symbol* at(HexCoord c) const;
  bool occupied(HexCoord c) const { return at(c) != nullptr; }

  std::vector<HexCoord> coords() const;
  HexCoord min_corner() const;  // component-wise minimum
  HexPicture translated(HexCoord delta) const;

  friend bool operator==(const HexPicture&, const HexPicture&) = default;
  friend bool operator<(const HexPicture& a, const HexPicture& b);

 private:
  HexPicture() = default;
  std::vector<Cell> cells_;
};

/// A picture translated so that min q = 0 and min r = 0.
class CanonicalPicture {
 public:
  const HexPicture& picture() const { return picture_; }
  std::span<const Cell> cells() const { return picture_.cells(); }
  std::size_t size() const { return picture_.size(); }
  operator const HexPicture&() const { return picture_; }

  friend bool operator==(const CanonicalPicture&, const CanonicalPicture&) = default;
  friend bool operator<(const CanonicalPicture& a, const CanonicalPicture& b) {
    return a.picture_ < b.picture_;
  }

 private:
  friend CanonicalPicture canonicalize(const HexPicture& p);
  explicit CanonicalPicture(HexPicture p) : picture_(std::move(p)) {}
  HexPicture picture_;
};

CanonicalPicture canonicalize(const HexPicture& p);

struct PictureHash {
  std::size_t operator()(const HexPicture& p) const noexcept;
  std::size_t operator()(const CanonicalPicture& p) const noexcept { return (*this)(p.picture()); }
};

/// Ordering used for every sorted listing: cell count first, then record text.
bool listing_less(const CanonicalPicture& a, const CanonicalPicture& b);

/// Staggered text layout: cell (q,r) sits on row r - r_min at column
/// 2q + r - min(2q + r). Multi-character symbols are replaced by glyphs that
/// are explained in a legend footer:
///
///     <grid rows>
///     --
///     <glyph>=<symbol>
std::string render_text(const HexPicture& p);

/// Inverse of render_text up to translation. Throws PictureError.
CanonicalPicture parse_picture_text(std::string_view text);

/// One-line form `q,r:sym;q,r:sym;...` in row-major order.
std::string to_record(const HexPicture& p);
HexPicture parse_record(std::string_view text);

/// Symbol tokens: letters, digits and apostrophes; `#` is reserved.
bool is_symbol_token(std::string_view s);

}  // namespace hags
