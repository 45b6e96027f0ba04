#include "hags/oracles.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <iterator>

namespace hags {

namespace {

const Symbol kA = "a";
const Symbol kB = "b";

bool all_a(const HexPicture& p) {
  return std::all_of(p.cells().begin(), p.cells().end(), [](const Cell& c) { return c.symbol == kA; });
}

bool in_hexagon(HexCoord c, int a, int b, int c_side) {
  if (c.r < -a || c.r > c_side) return false;
  return c.q >= std::max(0, -c.r) && c.q <= std::min(a + b, b + c_side - c.r);
}

std::vector<HexCoord> hexagon_cells(int a, int b, int c) {
  std::vector<HexCoord> out;
  for (int r = -a; r <= c; ++r)
    for (int q = std::max(0, -r); q <= std::min(a + b, b + c - r); ++q) out.push_back({q, r});
  return out;
}

std::size_t hexagon_size(int a, int b, int c) {
  std::size_t n = 0;
  for (int r = -a; r <= c; ++r) n += static_cast<std::size_t>(std::min(a + b, b + c - r) - std::max(0, -r) + 1);
  return n;
}

CanonicalPicture build(const std::vector<HexCoord>& at, const Symbol& sym) {
  std::vector<Cell> cells;
  cells.reserve(at.size());
  for (HexCoord c : at) cells.push_back({c, sym});
  return canonicalize(HexPicture(std::move(cells)));
}

struct RowFrame {
  int r_min = INT_MAX, r_max = INT_MIN;
  HexCoord left_vertex;
  int top_len = 0;
};

// Row extent, the unique leftmost cell by display column, and the top row length.
std::optional<RowFrame> row_frame(const HexPicture& p) {
  if (p.size() == 0) return std::nullopt;
  RowFrame f;
  int best = INT_MAX, ties = 0;
  for (const Cell& c : p.cells()) {
    f.r_min = std::min(f.r_min, c.at.r);
    f.r_max = std::max(f.r_max, c.at.r);
    int col = 2 * c.at.q + c.at.r;
    if (col < best) {
      best = col;
      ties = 1;
      f.left_vertex = c.at;
    } else if (col == best) {
      ++ties;
    }
  }
  if (ties != 1) return std::nullopt;
  for (const Cell& c : p.cells())
    if (c.at.r == f.r_min) ++f.top_len;
  return f;
}

HexagonShape shape_of(int a, int b, int c) { return {a + 1, c + 1, a + 1, c + 1, b + 1, b + 1}; }

std::optional<std::array<int, 3>> hexagon_params(const HexPicture& p) {
  auto f = row_frame(p);
  if (!f) return std::nullopt;
  return std::array<int, 3>{f->left_vertex.r - f->r_min, f->top_len - 1, f->r_max - f->left_vertex.r};
}

}  // namespace

CanonicalPicture make_arrowhead(ArrowheadShape s) {
  std::vector<HexCoord> at{{0, 0}};
  for (int k = 1; k <= s.lu_arm; ++k) at.push_back({k, -k});
  for (int k = 1; k <= s.ll_arm; ++k) at.push_back({0, k});
  return build(at, kA);
}

CanonicalPicture make_solid_hexagon(int a, int b, int c) { return build(hexagon_cells(a, b, c), kA); }

CanonicalPicture make_general_hex_frame(int a, int b, int c) {
  std::vector<HexCoord> at;
  for (HexCoord h : hexagon_cells(a, b, c)) {
    auto ns = neighbors(h);
    if (std::any_of(ns.begin(), ns.end(), [&](HexCoord n) { return !in_hexagon(n, a, b, c); })) at.push_back(h);
  }
  return build(at, kA);
}

CanonicalPicture make_hex_frame(HexFrameShape s) {
  return make_general_hex_frame(s.side - 1, s.side - 1, s.side - 1);
}

CanonicalPicture make_thm2_arrowhead(Thm2Shape s) {
  std::vector<Cell> cells;
  for (int r = -s.arm; r <= s.arm; ++r) {
    int q0 = std::max(0, -r);
    for (int k = 0; k < s.width; ++k) {
      bool border = r == 0 || k == 0 || k == s.width - 1;
      cells.push_back({{q0 + k, r}, border ? kA : kB});
    }
  }
  return canonicalize(HexPicture(std::move(cells)));
}

std::optional<ArrowheadShape> match_arrowhead(const HexPicture& p) {
  if (p.size() < 3 || !all_a(p)) return std::nullopt;
  const int n = static_cast<int>(p.size());
  for (const Cell& apex : p.cells()) {
    int lu = 0, ll = 0;
    while (p.occupied(apex.at + HexCoord{lu + 1, -(lu + 1)})) ++lu;
    while (p.occupied(apex.at + HexCoord{0, ll + 1})) ++ll;
    if (lu >= 1 && ll >= 1 && lu + ll + 1 == n) return ArrowheadShape{lu, ll};
  }
  return std::nullopt;
}

std::optional<HexagonShape> match_solid_hexagon(const HexPicture& p) {
  if (!all_a(p)) return std::nullopt;
  auto params = hexagon_params(p);
  if (!params) return std::nullopt;
  auto [a, b, c] = *params;
  if (a < 1 || b < 1 || c < 1) return std::nullopt;
  if (hexagon_size(a, b, c) != p.size() || canonicalize(p) != make_solid_hexagon(a, b, c)) return std::nullopt;
  return shape_of(a, b, c);
}

std::optional<HexagonShape> match_general_hex_frame(const HexPicture& p) {
  if (!all_a(p)) return std::nullopt;
  auto params = hexagon_params(p);
  if (!params) return std::nullopt;
  auto [a, b, c] = *params;
  if (a < 2 || b < 2 || c < 2) return std::nullopt;
  if (static_cast<std::size_t>(2 * (a + b + c)) != p.size() || canonicalize(p) != make_general_hex_frame(a, b, c))
    return std::nullopt;
  return shape_of(a, b, c);
}

std::optional<HexFrameShape> match_hex_frame(const HexPicture& p) {
  auto s = match_general_hex_frame(p);
  if (!s || s->lu != s->u || s->u != s->ll) return std::nullopt;
  return HexFrameShape{s->u};
}

std::optional<Thm2Shape> match_thm2_arrowhead(const HexPicture& p) {
  auto f = row_frame(p);
  if (!f) return std::nullopt;
  int rows = f->r_max - f->r_min + 1;
  if (rows < 3 || rows % 2 == 0) return std::nullopt;
  Thm2Shape s{(rows - 1) / 2, f->top_len};
  if (s.width < 3 || static_cast<std::size_t>(rows * s.width) != p.size()) return std::nullopt;
  if (canonicalize(p) != make_thm2_arrowhead(s)) return std::nullopt;
  return s;
}

std::string_view to_string(OracleFamily f) {
  switch (f) {
    case OracleFamily::kArrowheadAny: return "arrowhead-any";
    case OracleFamily::kArrowheadEqual: return "arrowhead-equal";
    case OracleFamily::kHexFrame: return "hex-frame";
    case OracleFamily::kHexFrameGeneral: return "hex-frame-general";
    case OracleFamily::kSolidHexagon: return "solid-hexagon";
    case OracleFamily::kThm2Arrowhead: return "thm2-arrowhead";
  }
  return "?";
}

const std::vector<OracleFamily>& all_oracle_families() {
  static const std::vector<OracleFamily> all{OracleFamily::kArrowheadAny,    OracleFamily::kArrowheadEqual,
                                             OracleFamily::kHexFrame,        OracleFamily::kHexFrameGeneral,
                                             OracleFamily::kSolidHexagon,    OracleFamily::kThm2Arrowhead};
  return all;
}

std::optional<OracleFamily> parse_oracle_family(std::string_view name) {
  for (OracleFamily f : all_oracle_families())
    if (to_string(f) == name) return f;
  return std::nullopt;
}

bool family_contains(OracleFamily f, const HexPicture& p) {
  switch (f) {
    case OracleFamily::kArrowheadAny: return match_arrowhead(p).has_value();
    case OracleFamily::kArrowheadEqual: {
      auto s = match_arrowhead(p);
      return s && s->lu_arm == s->ll_arm;
    }
    case OracleFamily::kHexFrame: return match_hex_frame(p).has_value();
    case OracleFamily::kHexFrameGeneral: return match_general_hex_frame(p).has_value();
    case OracleFamily::kSolidHexagon: return match_solid_hexagon(p).has_value();
    case OracleFamily::kThm2Arrowhead: return match_thm2_arrowhead(p).has_value();
  }
  return false;
}

std::vector<CanonicalPicture> oracle_language(OracleFamily f, std::size_t max_cells) {
  std::vector<CanonicalPicture> out;
  const int m = static_cast<int>(std::min<std::size_t>(max_cells, INT_MAX / 4));
  switch (f) {
    case OracleFamily::kArrowheadAny:
      for (int i = 1; i + 2 <= m; ++i)
        for (int j = 1; i + j + 1 <= m; ++j) out.push_back(make_arrowhead({i, j}));
      break;
    case OracleFamily::kArrowheadEqual:
      for (int l = 1; 2 * l + 1 <= m; ++l) out.push_back(make_arrowhead({l, l}));
      break;
    case OracleFamily::kHexFrame:
      for (int n = 3; 6 * (n - 1) <= m; ++n) out.push_back(make_hex_frame({n}));
      break;
    case OracleFamily::kHexFrameGeneral:
      for (int a = 2; 2 * (a + 4) <= m; ++a)
        for (int b = 2; 2 * (a + b + 2) <= m; ++b)
          for (int c = 2; 2 * (a + b + c) <= m; ++c) out.push_back(make_general_hex_frame(a, b, c));
      break;
    case OracleFamily::kSolidHexagon:
      for (int a = 1; hexagon_size(a, 1, 1) <= max_cells; ++a)
        for (int b = 1; hexagon_size(a, b, 1) <= max_cells; ++b)
          for (int c = 1; hexagon_size(a, b, c) <= max_cells; ++c) out.push_back(make_solid_hexagon(a, b, c));
      break;
    case OracleFamily::kThm2Arrowhead:
      for (int l = 1; (2 * l + 1) * 3 <= m; ++l)
        for (int w = 3; (2 * l + 1) * w <= m; ++w) out.push_back(make_thm2_arrowhead({l, w}));
      break;
  }
  std::sort(out.begin(), out.end(), listing_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LanguageDiff compare_languages(std::vector<CanonicalPicture> a, std::vector<CanonicalPicture> b) {
  std::sort(a.begin(), a.end(), listing_less);
  std::sort(b.begin(), b.end(), listing_less);
  a.erase(std::unique(a.begin(), a.end()), a.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  LanguageDiff d;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d.only_a), listing_less);
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(d.only_b), listing_less);
  d.common = a.size() - d.only_a.size();
  return d;
}

}  // namespace hags
