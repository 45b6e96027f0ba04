#pragma once

// Isometric rules with permitting sets: validation, classification,
// occurrence matching and application.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hags/hexgrid.hpp"

namespace hags {

struct Alphabet {
  std::set<Symbol> nonterminals;
  std::set<Symbol> terminals;

  bool is_nonterminal(const Symbol& s) const { return nonterminals.contains(s); }
  bool is_terminal(const Symbol& s) const { return terminals.contains(s); }
};

/// Offset -> symbol, where std::nullopt is the blank `#`.
struct Pattern {
  std::map<HexCoord, std::optional<Symbol>> entries;

  std::set<HexCoord> offsets() const;
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

struct HexRule {
  std::string label;
  Pattern lhs;
  Pattern rhs;
  std::set<Symbol> permit;

  friend bool operator==(const HexRule&, const HexRule&) = default;
};

/// REGULAR implies CONTEXT_FREE implies ISOMETRIC; the enum is ordered weakest first.
enum class RuleClass { kIsometric, kContextFree, kRegular };

std::string_view to_string(RuleClass c);
/// "ISOHA", "CFHA" or "REGHA": the family name for systems built from rules of this class.
std::string_view family_name(RuleClass c);
std::optional<RuleClass> parse_family_name(std::string_view s);

enum class RuleIssueCode {
  kShapeMismatch,
  kNoNonterminal,
  kTerminalRewritten,
  kBlankIntroduced,
  kMissingAnchor,
  kDisconnectedPattern,
  kUndeclaredSymbol,
  kBadPermit,
  kDuplicateLabel,
  kClassViolation,
  kBadSystem,
};

std::string_view to_string(RuleIssueCode c);

struct RuleIssue {
  RuleIssueCode code;
  std::optional<HexCoord> offset;
  std::string message;
};

struct Classification {
  std::optional<RuleClass> rule_class;  // empty when issues is non-empty
  std::vector<RuleIssue> issues;

  bool valid() const { return rule_class.has_value(); }
};

/// Validates `rule` against the isometric conditions and returns the strongest
/// class it belongs to, or every violation found.
Classification classify_rule(const HexRule& rule, const Alphabet& alphabet);

/// Distinct symbols over all cells.
std::set<Symbol> alph(const HexPicture& p);

struct Occurrence {
  HexCoord anchor;  // absolute position of offset (0,0)
  friend bool operator==(Occurrence, Occurrence) = default;
};

/// A rule preprocessed for repeated matching.
class CompiledRule {
 public:
  explicit CompiledRule(HexRule rule);

  const HexRule& rule() const { return rule_; }

  /// Every anchor satisfying the symbol, blank, permitting and connectivity
  /// conditions, in row-major anchor order.
  std::vector<Occurrence> find_occurrences(const HexPicture& p) const;
  bool applicable(const HexPicture& p) const;
  bool matches_at(const HexPicture& p, HexCoord anchor) const;

  /// Precondition: matches_at(p, occ.anchor).
  HexPicture apply_unchecked(const HexPicture& p, Occurrence occ) const;

 private:
  bool match_cells(const HexPicture& p, HexCoord anchor) const;
  bool permitted(const HexPicture& p, HexCoord anchor) const;
  bool stays_connected(const HexPicture& p, HexCoord anchor) const;
  template <typename Visit>
  void scan(const HexPicture& p, Visit&& visit) const;

  HexRule rule_;
  HexCoord pivot_;
  Symbol pivot_symbol_;
  std::vector<std::pair<HexCoord, Symbol>> filled_;  // non-blank lhs cells
  std::vector<HexCoord> blanks_;                     // blank lhs cells
  std::vector<std::pair<HexCoord, Symbol>> writes_;  // non-blank rhs cells
  std::vector<HexCoord> added_;                      // blank lhs, non-blank rhs
};

enum class GrammarErrc { kInvalidOccurrence, kInvalidRule };

class GrammarError : public std::runtime_error {
 public:
  GrammarError(GrammarErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  GrammarErrc code() const noexcept { return code_; }

 private:
  GrammarErrc code_;
};

std::vector<Occurrence> find_occurrences(const HexPicture& p, const HexRule& rule);

/// Replaces the matched subpattern. Throws GrammarError(kInvalidOccurrence)
/// when `occ` is not an occurrence of `rule` in `p`.
HexPicture apply_at(const HexPicture& p, const HexRule& rule, Occurrence occ);

}  // namespace hags
