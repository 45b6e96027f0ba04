#pragma once

// Shared helpers for the test binaries: fixtures, random pictures and rules,
// and a brute-force enumerator of small connected shapes.

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hags/dsl.hpp"
#include "hags/engine.hpp"
#include "hags/hexgrid.hpp"

namespace hags::test {

inline std::string fixture_path(const std::string& name) { return std::string(HAGS_FIXTURE_DIR) + "/" + name; }

inline GrammarSystem load_fixture(const std::string& name) { return parse_system(read_text_file(fixture_path(name))); }

inline CanonicalPicture load_figure(const std::string& name) {
  return parse_picture_text(read_text_file(fixture_path(name)));
}

inline HexPicture picture_of(const std::vector<HexCoord>& at, const Symbol& sym = "a") {
  std::vector<Cell> cells;
  for (HexCoord c : at) cells.push_back({c, sym});
  return HexPicture(std::move(cells));
}

/// Random connected shape grown cell by cell from the origin.
inline std::vector<HexCoord> random_shape(std::mt19937& rng, std::size_t n) {
  std::vector<HexCoord> cells{{0, 0}};
  std::set<HexCoord> taken{{0, 0}};
  while (cells.size() < n) {
    HexCoord base = cells[std::uniform_int_distribution<std::size_t>(0, cells.size() - 1)(rng)];
    HexCoord next = base + kDirectionOffsets[std::uniform_int_distribution<int>(0, 5)(rng)];
    if (taken.insert(next).second) cells.push_back(next);
  }
  return cells;
}

inline HexPicture random_picture(std::mt19937& rng, std::size_t n, const std::vector<Symbol>& symbols) {
  std::vector<Cell> cells;
  for (HexCoord c : random_shape(rng, n))
    cells.push_back({c, symbols[std::uniform_int_distribution<std::size_t>(0, symbols.size() - 1)(rng)]});
  return HexPicture(std::move(cells));
}

/// Every fixed (translation-canonical) connected shape with exactly n cells,
/// by extending the shapes of size n-1 at every free neighbour.
inline std::vector<std::vector<HexCoord>> fixed_polyhexes(std::size_t n) {
  std::set<std::vector<HexCoord>> level{{{0, 0}}};
  auto canon = [](std::vector<HexCoord> v) {
    int mq = v.front().q, mr = v.front().r;
    for (HexCoord c : v) mq = std::min(mq, c.q), mr = std::min(mr, c.r);
    for (HexCoord& c : v) c = c - HexCoord{mq, mr};
    std::sort(v.begin(), v.end());
    return v;
  };
  for (std::size_t size = 1; size < n; ++size) {
    std::set<std::vector<HexCoord>> next;
    for (const auto& shape : level) {
      std::set<HexCoord> have(shape.begin(), shape.end());
      for (HexCoord c : shape)
        for (HexCoord nb : neighbors(c)) {
          if (have.contains(nb)) continue;
          auto grown = shape;
          grown.push_back(nb);
          next.insert(canon(grown));
        }
    }
    level = std::move(next);
  }
  return {level.begin(), level.end()};
}

/// Random context-free rule over N = {S, A, B}, T = {a, b}: one nonterminal
/// at the anchor plus up to two neighbouring cells that are blank, terminal
/// context, or grown; random permits. May be invalid; callers classify.
inline HexRule random_rule(std::mt19937& rng, const std::string& label) {
  static const std::vector<Symbol> nts{"S", "A", "B"};
  static const std::vector<Symbol> ts{"a", "b"};
  auto pick = [&](const std::vector<Symbol>& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };
  auto coin = [&](int pct) { return std::uniform_int_distribution<int>(0, 99)(rng) < pct; };
  HexRule r;
  r.label = label;
  r.lhs.entries[{0, 0}] = pick(nts);
  r.rhs.entries[{0, 0}] = coin(50) ? pick(ts) : pick(nts);
  int extra = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int i = 0; i < extra; ++i) {
    HexCoord off = kDirectionOffsets[std::uniform_int_distribution<int>(0, 5)(rng)];
    if (r.lhs.entries.contains(off)) continue;
    if (coin(30)) {
      Symbol t = pick(ts);
      r.lhs.entries[off] = t;
      r.rhs.entries[off] = t;
    } else {
      r.lhs.entries[off] = std::nullopt;
      r.rhs.entries[off] = coin(50) ? pick(ts) : pick(nts);
    }
  }
  if (coin(40)) r.permit.insert(pick(nts));
  return r;
}

inline Alphabet random_alphabet() { return Alphabet{{"S", "A", "B"}, {"a", "b"}}; }

/// Random valid system with 1-3 components of 1-4 rules each.
inline GrammarSystem random_system(std::mt19937& rng) {
  GrammarSystem sys;
  sys.name = "R";
  sys.alphabet = random_alphabet();
  sys.start = "S";
  int comps = std::uniform_int_distribution<int>(1, 3)(rng);
  int label = 0;
  for (int c = 0; c < comps; ++c) {
    Component comp{"P" + std::to_string(c + 1), {}};
    int rules = std::uniform_int_distribution<int>(1, 4)(rng);
    while (static_cast<int>(comp.rules.size()) < rules) {
      HexRule r = random_rule(rng, std::to_string(++label));
      if (classify_rule(r, sys.alphabet).valid()) comp.rules.push_back(std::move(r));
    }
    sys.components.push_back(std::move(comp));
  }
  return sys;
}

}  // namespace hags::test
