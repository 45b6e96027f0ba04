#include "hags/grammar.hpp"

#include <algorithm>
#include <vector>

namespace hags {

std::set<HexCoord> Pattern::offsets() const {
  std::set<HexCoord> out;
  for (const auto& [off, _] : entries) out.insert(off);
  return out;
}

std::string_view to_string(RuleClass c) {
  switch (c) {
    case RuleClass::kIsometric: return "ISOMETRIC";
    case RuleClass::kContextFree: return "CONTEXT_FREE";
    case RuleClass::kRegular: return "REGULAR";
  }
  return "?";
}

std::string_view family_name(RuleClass c) {
  switch (c) {
    case RuleClass::kIsometric: return "ISOHA";
    case RuleClass::kContextFree: return "CFHA";
    case RuleClass::kRegular: return "REGHA";
  }
  return "?";
}

std::optional<RuleClass> parse_family_name(std::string_view s) {
  if (s == "ISOHA") return RuleClass::kIsometric;
  if (s == "CFHA") return RuleClass::kContextFree;
  if (s == "REGHA") return RuleClass::kRegular;
  return std::nullopt;
}

std::string_view to_string(RuleIssueCode c) {
  switch (c) {
    case RuleIssueCode::kShapeMismatch: return "SHAPE_MISMATCH";
    case RuleIssueCode::kNoNonterminal: return "NO_NONTERMINAL";
    case RuleIssueCode::kTerminalRewritten: return "TERMINAL_REWRITTEN";
    case RuleIssueCode::kBlankIntroduced: return "BLANK_INTRODUCED";
    case RuleIssueCode::kMissingAnchor: return "MISSING_ANCHOR";
    case RuleIssueCode::kDisconnectedPattern: return "DISCONNECTED_PATTERN";
    case RuleIssueCode::kUndeclaredSymbol: return "UNDECLARED_SYMBOL";
    case RuleIssueCode::kBadPermit: return "BAD_PERMIT";
    case RuleIssueCode::kDuplicateLabel: return "DUPLICATE_LABEL";
    case RuleIssueCode::kClassViolation: return "CLASS_VIOLATION";
    case RuleIssueCode::kBadSystem: return "BAD_SYSTEM";
  }
  return "?";
}

namespace {

bool is_regular_shape(const HexRule& rule, const Alphabet& ab, HexCoord nt_offset) {
  const auto& lhs = rule.lhs.entries;
  const auto& rhs = rule.rhs.entries;
  auto is_t = [&](const std::optional<Symbol>& s) { return s && ab.is_terminal(*s); };
  auto is_n = [&](const std::optional<Symbol>& s) { return s && ab.is_nonterminal(*s); };
  if (lhs.size() == 1) return is_t(rhs.at(nt_offset));
  if (lhs.size() != 2) return false;
  for (HexCoord d : kDirectionOffsets) {
    HexCoord grow = nt_offset + d;
    auto it = lhs.find(grow);
    if (it == lhs.end()) continue;
    return !it->second && is_t(rhs.at(nt_offset)) && is_n(rhs.at(grow));
  }
  return false;
}

}  // namespace

Classification classify_rule(const HexRule& rule, const Alphabet& ab) {
  Classification out;
  auto issue = [&out](RuleIssueCode code, std::optional<HexCoord> off, std::string msg) {
    out.issues.push_back({code, off, std::move(msg)});
  };
  const auto& lhs = rule.lhs.entries;
  const auto& rhs = rule.rhs.entries;

  if (!lhs.contains(HexCoord{0, 0}) || !rhs.contains(HexCoord{0, 0}))
    issue(RuleIssueCode::kMissingAnchor, HexCoord{0, 0}, "pattern lacks the anchor offset (0,0)");

  for (const auto& [off, _] : lhs)
    if (!rhs.contains(off))
      issue(RuleIssueCode::kShapeMismatch, off, "offset " + to_string(off) + " is in the left side only");
  for (const auto& [off, _] : rhs)
    if (!lhs.contains(off))
      issue(RuleIssueCode::kShapeMismatch, off, "offset " + to_string(off) + " is in the right side only");

  std::set<HexCoord> all = rule.lhs.offsets();
  for (const auto& [off, _] : rhs) all.insert(off);
  std::vector<HexCoord> all_v(all.begin(), all.end());
  if (!all_v.empty() && !is_connected(all_v))
    issue(RuleIssueCode::kDisconnectedPattern, std::nullopt, "pattern offsets are not connected");

  auto check_declared = [&](const Pattern& pat) {
    for (const auto& [off, sym] : pat.entries)
      if (sym && !ab.is_terminal(*sym) && !ab.is_nonterminal(*sym))
        issue(RuleIssueCode::kUndeclaredSymbol, off, "undeclared symbol '" + *sym + "' at " + to_string(off));
  };
  check_declared(rule.lhs);
  check_declared(rule.rhs);

  std::vector<HexCoord> nt_offsets;
  for (const auto& [off, sym] : lhs)
    if (sym && ab.is_nonterminal(*sym)) nt_offsets.push_back(off);
  if (nt_offsets.empty())
    issue(RuleIssueCode::kNoNonterminal, std::nullopt, "left side contains no nonterminal");

  for (const auto& [off, sym] : lhs) {
    auto it = rhs.find(off);
    if (it == rhs.end() || !sym) continue;
    if (!it->second) {
      issue(RuleIssueCode::kBlankIntroduced, off, "non-blank '" + *sym + "' rewritten to blank at " + to_string(off));
    } else if (ab.is_terminal(*sym) && *it->second != *sym) {
      issue(RuleIssueCode::kTerminalRewritten, off,
            "terminal '" + *sym + "' rewritten to '" + *it->second + "' at " + to_string(off));
    }
  }

  for (const Symbol& s : rule.permit)
    if (!ab.is_nonterminal(s))
      issue(RuleIssueCode::kBadPermit, std::nullopt, "permitting symbol '" + s + "' is not a declared nonterminal");

  if (!out.issues.empty()) return out;

  if (nt_offsets.size() != 1) {
    out.rule_class = RuleClass::kIsometric;
  } else if (is_regular_shape(rule, ab, nt_offsets.front())) {
    out.rule_class = RuleClass::kRegular;
  } else {
    out.rule_class = RuleClass::kContextFree;
  }
  return out;
}

std::set<Symbol> alph(const HexPicture& p) {
  std::set<Symbol> out;
  for (const Cell& c : p.cells()) out.insert(c.symbol);
  return out;
}

CompiledRule::CompiledRule(HexRule rule) : rule_(std::move(rule)) {
  for (const auto& [off, sym] : rule_.lhs.entries) {
    if (sym)
      filled_.emplace_back(off, *sym);
    else
      blanks_.push_back(off);
  }
  for (const auto& [off, sym] : rule_.rhs.entries) {
    if (!sym) continue;
    writes_.emplace_back(off, *sym);
    auto it = rule_.lhs.entries.find(off);
    if (it == rule_.lhs.entries.end() || !it->second) added_.push_back(off);
  }
  if (filled_.empty())
    throw GrammarError(GrammarErrc::kInvalidRule, "rule '" + rule_.label + "' has no non-blank left cell");
  auto anchor_it = std::find_if(filled_.begin(), filled_.end(),
                                [](const auto& e) { return e.first == HexCoord{0, 0}; });
  const auto& pivot = anchor_it != filled_.end() ? *anchor_it : filled_.front();
  pivot_ = pivot.first;
  pivot_symbol_ = pivot.second;
}

bool CompiledRule::match_cells(const HexPicture& p, HexCoord anchor) const {
  for (const auto& [off, sym] : filled_) {
    const Symbol* s = p.at(anchor + off);
    if (!s || *s != sym) return false;
  }
  for (HexCoord off : blanks_)
    if (p.occupied(anchor + off)) return false;
  return true;
}

bool CompiledRule::permitted(const HexPicture& p, HexCoord anchor) const {
  for (const Symbol& need : rule_.permit) {
    bool found = false;
    for (const Cell& c : p.cells()) {
      if (c.symbol != need) continue;
      HexCoord rel = c.at - anchor;
      bool inside = std::any_of(filled_.begin(), filled_.end(), [rel](const auto& e) { return e.first == rel; });
      if (!inside) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool CompiledRule::stays_connected(const HexPicture& p, HexCoord anchor) const {
  if (added_.empty()) return true;
  std::vector<HexCoord> pending;
  pending.reserve(added_.size());
  for (HexCoord off : added_) pending.push_back(anchor + off);
  std::vector<HexCoord> frontier;
  auto take_if = [&](auto pred) {
    for (auto it = pending.begin(); it != pending.end();) {
      if (pred(*it)) {
        frontier.push_back(*it);
        it = pending.erase(it);
      } else {
        ++it;
      }
    }
  };
  take_if([&](HexCoord c) {
    auto ns = neighbors(c);
    return std::any_of(ns.begin(), ns.end(), [&](HexCoord n) { return p.occupied(n); });
  });
  while (!frontier.empty() && !pending.empty()) {
    HexCoord c = frontier.back();
    frontier.pop_back();
    take_if([&](HexCoord x) {
      auto ns = neighbors(c);
      return std::find(ns.begin(), ns.end(), x) != ns.end();
    });
  }
  return pending.empty();
}

bool CompiledRule::matches_at(const HexPicture& p, HexCoord anchor) const {
  return match_cells(p, anchor) && permitted(p, anchor) && stays_connected(p, anchor);
}

template <typename Visit>
void CompiledRule::scan(const HexPicture& p, Visit&& visit) const {
  for (const Cell& c : p.cells()) {
    if (c.symbol != pivot_symbol_) continue;
    HexCoord anchor = c.at - pivot_;
    if (matches_at(p, anchor) && !visit(Occurrence{anchor})) return;
  }
}

std::vector<Occurrence> CompiledRule::find_occurrences(const HexPicture& p) const {
  std::vector<Occurrence> out;
  scan(p, [&out](Occurrence o) {
    out.push_back(o);
    return true;
  });
  return out;
}

bool CompiledRule::applicable(const HexPicture& p) const {
  bool any = false;
  scan(p, [&any](Occurrence) {
    any = true;
    return false;
  });
  return any;
}

HexPicture CompiledRule::apply_unchecked(const HexPicture& p, Occurrence occ) const {
  std::vector<Cell> cells(p.cells().begin(), p.cells().end());
  std::size_t original = cells.size();
  for (const auto& [off, sym] : writes_) {
    HexCoord at = occ.anchor + off;
    auto it = std::lower_bound(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(original), at,
                               [](const Cell& c, HexCoord key) { return c.at < key; });
    if (it != cells.begin() + static_cast<std::ptrdiff_t>(original) && it->at == at)
      it->symbol = sym;
    else
      cells.push_back({at, sym});
  }
  if (cells.size() != original) {
    auto mid = cells.begin() + static_cast<std::ptrdiff_t>(original);
    std::sort(mid, cells.end(), [](const Cell& a, const Cell& b) { return a.at < b.at; });
    std::inplace_merge(cells.begin(), mid, cells.end(), [](const Cell& a, const Cell& b) { return a.at < b.at; });
  }
  return HexPicture::from_trusted(std::move(cells));
}

std::vector<Occurrence> find_occurrences(const HexPicture& p, const HexRule& rule) {
  return CompiledRule(rule).find_occurrences(p);
}

HexPicture apply_at(const HexPicture& p, const HexRule& rule, Occurrence occ) {
  CompiledRule compiled(rule);
  if (!compiled.matches_at(p, occ.anchor))
    throw GrammarError(GrammarErrc::kInvalidOccurrence,
                       "rule '" + rule.label + "' does not occur at " + to_string(occ.anchor));
  return compiled.apply_unchecked(p, occ);
}

}  // namespace hags
