#include <doctest.h>

#include <algorithm>
#include <random>

#include "hags/grammar.hpp"
#include "support.hpp"

using namespace hags;
using hags::test::picture_of;

namespace {

const Alphabet kAB{{"S", "A", "A'", "B", "X"}, {"a", "b"}};

HexRule make_rule(std::string label, std::vector<std::tuple<HexCoord, std::optional<Symbol>, std::optional<Symbol>>> es,
                  std::set<Symbol> permit = {}) {
  HexRule r;
  r.label = std::move(label);
  for (auto& [off, l, rr] : es) {
    r.lhs.entries[off] = l;
    r.rhs.entries[off] = rr;
  }
  r.permit = std::move(permit);
  return r;
}

std::vector<RuleIssueCode> codes(const Classification& c) {
  std::vector<RuleIssueCode> out;
  for (const auto& i : c.issues) out.push_back(i.code);
  return out;
}

bool has(const std::vector<RuleIssueCode>& v, RuleIssueCode c) { return std::find(v.begin(), v.end(), c) != v.end(); }

// Brute-force matcher written without CompiledRule: every anchor that lines
// up some left-side symbol, checked cell by cell, permits and connectivity
// applied as stated.
std::vector<HexCoord> brute_occurrences(const HexPicture& p, const HexRule& r) {
  std::set<HexCoord> anchors;
  for (const Cell& c : p.cells())
    for (const auto& [off, sym] : r.lhs.entries)
      if (sym && *sym == c.symbol) anchors.insert(c.at - off);
  std::vector<HexCoord> out;
  for (HexCoord a : anchors) {
    bool ok = true;
    std::set<HexCoord> matched;
    for (const auto& [off, sym] : r.lhs.entries) {
      const Symbol* s = p.at(a + off);
      if (sym ? (!s || *s != *sym) : s != nullptr) ok = false;
      if (sym) matched.insert(a + off);
    }
    if (!ok) continue;
    for (const Symbol& need : r.permit) {
      bool found = false;
      for (const Cell& c : p.cells())
        if (c.symbol == need && !matched.contains(c.at)) found = true;
      ok = ok && found;
    }
    if (!ok) continue;
    std::vector<HexCoord> after = p.coords();
    for (const auto& [off, sym] : r.rhs.entries)
      if (sym && !p.occupied(a + off)) after.push_back(a + off);
    if (is_connected(after)) out.push_back(a);
  }
  return out;
}

std::vector<HexCoord> anchors_of(const std::vector<Occurrence>& occ) {
  std::vector<HexCoord> out;
  for (auto o : occ) out.push_back(o.anchor);
  return out;
}

}  // namespace

TEST_CASE("classification of the arrowhead rules") {
  HexRule start = make_rule("1", {{{0, 0}, "S", "a"}, {{1, -1}, std::nullopt, "A"}, {{0, 1}, std::nullopt, "B"}});
  HexRule grow = make_rule("2", {{{0, 0}, "A", "a"}, {{1, -1}, std::nullopt, "A'"}});
  HexRule relabel = make_rule("4", {{{0, 0}, "A'", "A"}});
  HexRule finish = make_rule("6", {{{0, 0}, "A", "a"}});
  CHECK(classify_rule(start, kAB).rule_class == RuleClass::kContextFree);
  CHECK(classify_rule(grow, kAB).rule_class == RuleClass::kRegular);
  CHECK(classify_rule(relabel, kAB).rule_class == RuleClass::kContextFree);
  CHECK(classify_rule(finish, kAB).rule_class == RuleClass::kRegular);
}

TEST_CASE("two nonterminals on the left make a rule isometric only") {
  HexRule r = make_rule("i", {{{0, 0}, "A", "a"}, {{1, 0}, "B", "X"}});
  CHECK(classify_rule(r, kAB).rule_class == RuleClass::kIsometric);
}

TEST_CASE("terminal context keeps a rule context-free but not regular") {
  HexRule r = make_rule("c", {{{0, 0}, "A", "a"}, {{1, 0}, std::nullopt, "A"}, {{1, -1}, "a", "a"}});
  CHECK(classify_rule(r, kAB).rule_class == RuleClass::kContextFree);
}

TEST_CASE("every violation is reported") {
  HexRule mismatch;
  mismatch.label = "m";
  mismatch.lhs.entries[{0, 0}] = "A";
  mismatch.lhs.entries[{1, 0}] = std::nullopt;
  mismatch.rhs.entries[{0, 0}] = "a";
  CHECK(has(codes(classify_rule(mismatch, kAB)), RuleIssueCode::kShapeMismatch));

  CHECK(has(codes(classify_rule(make_rule("n", {{{0, 0}, "a", "a"}}), kAB)), RuleIssueCode::kNoNonterminal));
  CHECK(has(codes(classify_rule(make_rule("t", {{{0, 0}, "A", "a"}, {{1, 0}, "a", "b"}}), kAB)),
            RuleIssueCode::kTerminalRewritten));
  CHECK(has(codes(classify_rule(make_rule("b", {{{0, 0}, "A", std::nullopt}}), kAB)), RuleIssueCode::kBlankIntroduced));
  CHECK(has(codes(classify_rule(make_rule("x", {{{1, 0}, "A", "a"}}), kAB)), RuleIssueCode::kMissingAnchor));
  CHECK(has(codes(classify_rule(make_rule("d", {{{0, 0}, "A", "a"}, {{2, 0}, std::nullopt, "A"}}), kAB)),
            RuleIssueCode::kDisconnectedPattern));
  CHECK(has(codes(classify_rule(make_rule("u", {{{0, 0}, "A", "z"}}), kAB)), RuleIssueCode::kUndeclaredSymbol));
  CHECK(has(codes(classify_rule(make_rule("p", {{{0, 0}, "A", "a"}}, {"a"}), kAB)), RuleIssueCode::kBadPermit));
  CHECK_FALSE(classify_rule(make_rule("p", {{{0, 0}, "A", "a"}}, {"a"}), kAB).valid());
}

TEST_CASE("occurrences are listed row-major and applied in place") {
  HexRule finish = make_rule("6", {{{0, 0}, "A", "a"}});
  HexPicture p({{{0, 1}, "A"}, {{1, 0}, "A"}, {{0, 0}, "a"}});
  auto occ = find_occurrences(p, finish);
  REQUIRE(occ.size() == 2);
  CHECK(occ[0].anchor == HexCoord{1, 0});
  CHECK(occ[1].anchor == HexCoord{0, 1});
  HexPicture q = apply_at(p, finish, occ[1]);
  CHECK(*q.at({0, 1}) == "a");
  CHECK(*q.at({1, 0}) == "A");
  CHECK_THROWS_AS(apply_at(p, finish, Occurrence{{0, 0}}), GrammarError);
}

TEST_CASE("blank cells must be empty to match") {
  HexRule grow = make_rule("2", {{{0, 0}, "A", "a"}, {{1, -1}, std::nullopt, "A'"}});
  CHECK(find_occurrences(picture_of({{0, 0}}, "A"), grow).size() == 1);
  HexPicture blocked({{{0, 0}, "A"}, {{1, -1}, "a"}});
  CHECK(find_occurrences(blocked, grow).empty());
}

TEST_CASE("a permitting symbol inside the matched cells does not count") {
  HexRule r = make_rule("g", {{{0, 0}, "A", "a"}}, {"A"});
  CHECK(find_occurrences(picture_of({{0, 0}}, "A"), r).empty());
  HexPicture two({{{0, 0}, "A"}, {{1, 0}, "A"}});
  CHECK(find_occurrences(two, r).size() == 2);
}

TEST_CASE("added cells must attach to the picture") {
  HexRule far = make_rule("f", {{{0, 0}, "A", "a"}, {{1, 0}, std::nullopt, std::nullopt}, {{2, 0}, std::nullopt, "B"}});
  CHECK(find_occurrences(picture_of({{0, 0}}, "A"), far).empty());
  HexPicture bridge({{{0, 0}, "A"}, {{1, -1}, "a"}, {{2, -1}, "a"}});
  CHECK(find_occurrences(bridge, far).size() == 1);
}

TEST_CASE("property: matcher agrees with brute force, permits gate exactly") {
  std::mt19937 rng(21);
  int checked = 0;
  while (checked < 1000) {
    HexRule r = test::random_rule(rng, "r");
    if (!classify_rule(r, test::random_alphabet()).valid()) continue;
    HexPicture p = test::random_picture(rng, 1 + checked % 10, {"S", "A", "B", "a", "b"});
    auto got = anchors_of(find_occurrences(p, r));
    CHECK(got == brute_occurrences(p, r));

    // gating: the permit-free occurrences minus exactly those lacking a witness
    HexRule open = r;
    open.permit.clear();
    auto ungated = anchors_of(find_occurrences(p, open));
    CHECK(std::includes(ungated.begin(), ungated.end(), got.begin(), got.end()));
    ++checked;
  }
}

TEST_CASE("property: removing the only permitting occurrence removes the gated occurrences") {
  std::mt19937 rng(22);
  int checked = 0;
  while (checked < 1000) {
    // A row of A cells with one X somewhere; rule A -> a needs X.
    int n = std::uniform_int_distribution<int>(2, 9)(rng);
    int x = std::uniform_int_distribution<int>(0, n - 1)(rng);
    std::vector<Cell> cells;
    for (int i = 0; i < n; ++i) {
      bool a = std::uniform_int_distribution<int>(0, 1)(rng);
      cells.push_back({{i, 0}, i == x ? "X" : (a ? "A" : "a")});
    }
    HexPicture with(cells);
    cells[static_cast<std::size_t>(x)].symbol = "b";
    HexPicture without(cells);
    HexRule gated = make_rule("g", {{{0, 0}, "A", "a"}}, {"X"});
    HexRule open = make_rule("o", {{{0, 0}, "A", "a"}});
    CHECK(anchors_of(find_occurrences(with, gated)) == anchors_of(find_occurrences(with, open)));
    CHECK(find_occurrences(without, gated).empty());
    CHECK(anchors_of(find_occurrences(without, open)) == anchors_of(find_occurrences(with, open)));
    ++checked;
  }
}

TEST_CASE("property: empty permits behave as plain context-free rules") {
  std::mt19937 rng(23);
  int checked = 0;
  while (checked < 1000) {
    HexRule r = test::random_rule(rng, "r");
    r.permit.clear();
    if (!classify_rule(r, test::random_alphabet()).valid()) continue;
    HexPicture p = test::random_picture(rng, 1 + checked % 9, {"S", "A", "B", "a", "b"});
    // no permit condition at all: brute force with permits ignored
    CHECK(anchors_of(find_occurrences(p, r)) == brute_occurrences(p, r));
    ++checked;
  }
}

TEST_CASE("property: application keeps cells, terminals and connectivity") {
  std::mt19937 rng(24);
  const Alphabet ab = test::random_alphabet();
  int checked = 0;
  while (checked < 1000) {
    HexRule r = test::random_rule(rng, "r");
    if (!classify_rule(r, ab).valid()) continue;
    HexPicture p = test::random_picture(rng, 1 + checked % 9, {"S", "A", "B", "a", "b"});
    for (Occurrence o : find_occurrences(p, r)) {
      HexPicture q = apply_at(p, r, o);
      CHECK(is_connected(q.coords()));
      for (const Cell& c : p.cells()) {
        REQUIRE(q.occupied(c.at));
        if (ab.is_terminal(c.symbol)) CHECK(*q.at(c.at) == c.symbol);
      }
    }
    ++checked;
  }
}
