#include <doctest.h>

#include <climits>
#include <map>
#include <random>

#include "hags/oracles.hpp"
#include "support.hpp"

using namespace hags;

namespace {

bool only(const HexPicture& p, const Symbol& s) {
  for (const Cell& c : p.cells())
    if (c.symbol != s) return false;
  return true;
}

// Path with one bend: the apex sees its neighbours to the NE and SE, every
// other inner cell is straight.
bool is_arrowhead(const HexPicture& p) {
  if (p.size() < 3 || !only(p, "a") || !is_connected(p.coords())) return false;
  int bends = 0;
  std::size_t edges = 0;
  for (const Cell& c : p.cells()) {
    std::vector<HexCoord> ns;
    for (HexCoord d : kDirectionOffsets)
      if (p.occupied(c.at + d)) ns.push_back(d);
    edges += ns.size();
    if (ns.size() > 2) return false;
    if (ns.size() == 2 && ns[0] + ns[1] != HexCoord{0, 0}) {
      std::set<HexCoord> dirs(ns.begin(), ns.end());
      if (dirs != std::set<HexCoord>{{1, -1}, {0, 1}}) return false;
      ++bends;
    }
  }
  return bends == 1 && edges == 2 * (p.size() - 1);
}

std::pair<int, int> arms(const HexPicture& p) {
  int minr = INT_MAX, maxr = INT_MIN;
  for (const Cell& c : p.cells()) minr = std::min(minr, c.at.r), maxr = std::max(maxr, c.at.r);
  for (const Cell& c : p.cells())
    if (p.occupied(c.at + HexCoord{1, -1}) && p.occupied(c.at + HexCoord{0, 1})) return {c.at.r - minr, maxr - c.at.r};
  return {0, 0};
}

struct Box {
  int q0 = INT_MAX, q1 = INT_MIN, r0 = INT_MAX, r1 = INT_MIN, s0 = INT_MAX, s1 = INT_MIN;
  bool inside(HexCoord h) const {
    int s = -h.q - h.r;
    return h.q >= q0 && h.q <= q1 && h.r >= r0 && h.r <= r1 && s >= s0 && s <= s1;
  }
};

// Intersection of the three axis-aligned slabs spanned by the picture.
Box box_of(const HexPicture& p) {
  Box b;
  for (const Cell& c : p.cells()) {
    int s = -c.at.q - c.at.r;
    b.q0 = std::min(b.q0, c.at.q), b.q1 = std::max(b.q1, c.at.q);
    b.r0 = std::min(b.r0, c.at.r), b.r1 = std::max(b.r1, c.at.r);
    b.s0 = std::min(b.s0, s), b.s1 = std::max(b.s1, s);
  }
  return b;
}

std::vector<HexCoord> box_cells(const Box& b) {
  std::vector<HexCoord> out;
  for (int r = b.r0; r <= b.r1; ++r)
    for (int q = b.q0; q <= b.q1; ++q)
      if (b.inside({q, r})) out.push_back({q, r});
  return out;
}

// Cells on each of the six sides of the box.
std::array<int, 6> side_cells(const Box& b) {
  std::array<int, 6> n{};
  for (HexCoord h : box_cells(b)) {
    int s = -h.q - h.r;
    n[0] += h.r == b.r0, n[1] += h.r == b.r1, n[2] += h.q == b.q0;
    n[3] += h.q == b.q1, n[4] += s == b.s0, n[5] += s == b.s1;
  }
  return n;
}

bool min_side(const Box& b, int k) {
  auto n = side_cells(b);
  return std::all_of(n.begin(), n.end(), [&](int x) { return x >= k; });
}

bool is_solid_hexagon(const HexPicture& p) {
  if (!only(p, "a")) return false;
  Box b = box_of(p);
  return box_cells(b) == p.coords() && min_side(b, 2);
}

std::vector<HexCoord> rim(const Box& b) {
  std::vector<HexCoord> out;
  for (HexCoord h : box_cells(b)) {
    bool edge = false;
    for (HexCoord d : kDirectionOffsets) edge = edge || !b.inside(h + d);
    if (edge) out.push_back(h);
  }
  return out;
}

bool is_frame(const HexPicture& p, bool regular) {
  if (!only(p, "a")) return false;
  Box b = box_of(p);
  if (rim(b) != p.coords() || !min_side(b, 3)) return false;
  auto n = side_cells(b);
  return !regular || std::all_of(n.begin(), n.end(), [&](int x) { return x == n[0]; });
}

// Rows of equal width; going up from the middle each row starts one cell
// further along q, going down the start stays; border and middle row a.
bool is_thm2(const HexPicture& p) {
  std::map<int, std::vector<const Cell*>> rows;
  for (const Cell& c : p.cells()) rows[c.at.r].push_back(&c);
  int nrows = static_cast<int>(rows.size());
  if (nrows < 3 || nrows % 2 == 0) return false;
  int mid = rows.begin()->first + nrows / 2;
  std::size_t w = rows.begin()->second.size();
  if (w < 3) return false;
  int start_mid = rows.at(mid).front()->at.q;
  for (auto& [r, cells] : rows) {
    if (cells.size() != w) return false;
    int want = start_mid + std::max(0, mid - r);
    for (std::size_t k = 0; k < w; ++k) {
      if (cells[k]->at.q != want + static_cast<int>(k)) return false;
      bool border = r == mid || k == 0 || k + 1 == w;
      if (cells[k]->symbol != (border ? "a" : "b")) return false;
    }
  }
  return true;
}

bool predicate(OracleFamily f, const HexPicture& p) {
  switch (f) {
    case OracleFamily::kArrowheadAny: return is_arrowhead(p);
    case OracleFamily::kArrowheadEqual: return is_arrowhead(p) && arms(p).first == arms(p).second;
    case OracleFamily::kHexFrame: return is_frame(p, true);
    case OracleFamily::kHexFrameGeneral: return is_frame(p, false);
    case OracleFamily::kSolidHexagon: return is_solid_hexagon(p);
    case OracleFamily::kThm2Arrowhead: return is_thm2(p);
  }
  return false;
}

std::size_t count_triples(std::size_t max_cells, int lo, std::size_t (*size)(int, int, int)) {
  std::size_t n = 0;
  for (int a = lo; a < 40; ++a)
    for (int b = lo; b < 40; ++b)
      for (int c = lo; c < 40; ++c) n += size(a, b, c) <= max_cells;
  return n;
}

}  // namespace

TEST_CASE("figure pictures match their families") {
  auto fig3 = test::load_figure("figure3.hpic");
  CHECK(match_arrowhead(fig3) == ArrowheadShape{3, 3});
  CHECK(family_contains(OracleFamily::kArrowheadEqual, fig3));
  CHECK(predicate(OracleFamily::kArrowheadEqual, fig3));

  auto fig4 = test::load_figure("figure4.hpic");
  CHECK(match_hex_frame(fig4) == HexFrameShape{5});
  CHECK(is_frame(fig4, true));

  auto fig5 = test::load_figure("figure5.hpic");
  CHECK(match_solid_hexagon(fig5) == HexagonShape{5, 5, 5, 5, 5, 5});
  CHECK(is_solid_hexagon(fig5));

  auto fig6 = test::load_figure("figure6.hpic");
  CHECK(match_thm2_arrowhead(fig6) == Thm2Shape{4, 4});
  CHECK(is_thm2(fig6));
  CHECK_FALSE(family_contains(OracleFamily::kSolidHexagon, fig6));
}

TEST_CASE("builders produce the stated sizes") {
  CHECK(make_arrowhead({2, 5}).size() == 8);
  CHECK(make_hex_frame({4}).size() == 18);
  // lattice hexagon with edge lengths a, b, c
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int c = 1; c <= 4; ++c) {
        CHECK(make_solid_hexagon(a, b, c).size() == static_cast<std::size_t>(a * b + b * c + c * a + a + b + c + 1));
        if (a >= 2 && b >= 2 && c >= 2) CHECK(make_general_hex_frame(a, b, c).size() == static_cast<std::size_t>(2 * (a + b + c)));
      }
  CHECK(make_thm2_arrowhead({2, 3}).size() == 15);
}

TEST_CASE("family sizes up to a bound") {
  auto hex = +[](int a, int b, int c) { return static_cast<std::size_t>(a * b + b * c + c * a + a + b + c + 1); };
  auto frame = +[](int a, int b, int c) { return static_cast<std::size_t>(2 * (a + b + c)); };
  CHECK(oracle_language(OracleFamily::kSolidHexagon, 40).size() == count_triples(40, 1, hex));
  CHECK(oracle_language(OracleFamily::kSolidHexagon, 40).size() == 126);
  CHECK(oracle_language(OracleFamily::kHexFrameGeneral, 30).size() == count_triples(30, 2, frame));
  CHECK(oracle_language(OracleFamily::kHexFrame, 30).size() == 4);
  CHECK(oracle_language(OracleFamily::kArrowheadAny, 9).size() == 28);
  CHECK(oracle_language(OracleFamily::kArrowheadEqual, 15).size() == 7);
  std::size_t thm2 = 0;
  for (int l = 1; l < 20; ++l)
    for (int w = 3; w < 40; ++w) thm2 += (2 * l + 1) * w <= 40;
  CHECK(oracle_language(OracleFamily::kThm2Arrowhead, 40).size() == thm2);
  CHECK(thm2 == 24);
}

TEST_CASE("generated members satisfy the independent predicates") {
  for (OracleFamily f : all_oracle_families()) {
    CAPTURE(to_string(f));
    auto lang = oracle_language(f, 48);
    CHECK_FALSE(lang.empty());
    for (const auto& p : lang) {
      CHECK(predicate(f, p));
      CHECK(family_contains(f, p));
      CHECK(canonicalize(p) == p);
    }
    CHECK(std::is_sorted(lang.begin(), lang.end(), listing_less));
  }
}

TEST_CASE("matchers agree with predicates on every polyhex up to 7 cells") {
  std::size_t shapes = 0;
  for (std::size_t n = 1; n <= 7; ++n)
    for (const auto& coords : test::fixed_polyhexes(n)) {
      HexPicture p = test::picture_of(coords);
      for (OracleFamily f : all_oracle_families()) {
        CAPTURE(to_record(p));
        CAPTURE(to_string(f));
        CHECK(family_contains(f, p) == predicate(f, p));
      }
      ++shapes;
    }
  CHECK(shapes == 1 + 3 + 11 + 44 + 186 + 814 + 3652);
}

TEST_CASE("frames and hexagons reject one-cell perturbations") {
  for (OracleFamily f : {OracleFamily::kHexFrame, OracleFamily::kHexFrameGeneral, OracleFamily::kSolidHexagon}) {
    for (const auto& member : oracle_language(f, 30)) {
      const HexPicture& p = member;
      for (const Cell& drop : p.cells()) {
        std::vector<Cell> cells;
        for (const Cell& c : p.cells())
          if (c.at != drop.at) cells.push_back(c);
        if (!is_connected([&] { std::vector<HexCoord> v; for (auto& c : cells) v.push_back(c.at); return v; }())) continue;
        HexPicture q(std::move(cells));
        CHECK(family_contains(f, q) == predicate(f, q));
      }
      for (const Cell& c : p.cells())
        for (HexCoord d : kDirectionOffsets) {
          if (p.occupied(c.at + d)) continue;
          std::vector<Cell> cells(p.cells().begin(), p.cells().end());
          cells.push_back({c.at + d, "a"});
          HexPicture q(std::move(cells));
          CHECK(family_contains(f, q) == predicate(f, q));
        }
    }
  }
}

TEST_CASE("thick arrowheads depend on their a/b labelling") {
  for (const auto& member : oracle_language(OracleFamily::kThm2Arrowhead, 45)) {
    const HexPicture& p = member;
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::vector<Cell> cells(p.cells().begin(), p.cells().end());
      cells[i].symbol = cells[i].symbol == "a" ? "b" : "a";
      HexPicture q(std::move(cells));
      CHECK_FALSE(family_contains(OracleFamily::kThm2Arrowhead, q));
      CHECK_FALSE(predicate(OracleFamily::kThm2Arrowhead, q));
    }
  }
  std::mt19937 rng(51);
  for (int i = 0; i < 1000; ++i) {
    HexPicture p = test::random_picture(rng, 9 + i % 12, {"a", "b"});
    CHECK(family_contains(OracleFamily::kThm2Arrowhead, p) == predicate(OracleFamily::kThm2Arrowhead, p));
  }
}

TEST_CASE("language comparison") {
  auto a = oracle_language(OracleFamily::kArrowheadAny, 9);
  auto b = oracle_language(OracleFamily::kArrowheadEqual, 9);
  LanguageDiff d = compare_languages(a, b);
  CHECK(d.only_b.empty());
  CHECK(d.common == 4);
  CHECK(d.only_a.size() == 24);
  CHECK_FALSE(d.empty());
  CHECK(compare_languages(b, b).empty());
  auto dup = b;
  dup.push_back(b.front());
  CHECK(compare_languages(dup, b).empty());
}

TEST_CASE("family names round trip") {
  for (OracleFamily f : all_oracle_families()) CHECK(parse_oracle_family(to_string(f)) == f);
  CHECK_FALSE(parse_oracle_family("circle"));
}
