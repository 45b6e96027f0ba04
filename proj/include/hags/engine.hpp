#pragma once

// Cooperating distributed systems: derivation modes, terminal-mode closure,
// bounded language enumeration and membership tracing.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hags/grammar.hpp"
#include "hags/hexgrid.hpp"

namespace hags {

struct Component {
  std::string name;
  std::vector<HexRule> rules;
};

struct GrammarSystem {
  std::string name;
  Alphabet alphabet;
  Symbol start;
  std::vector<Component> components;
  /// Declared family; every rule must classify at this class or stricter.
  RuleClass declared_class = RuleClass::kContextFree;
};

struct SystemIssue {
  std::size_t component = 0;
  std::optional<std::size_t> rule;
  RuleIssue issue;
};

/// Checks alphabet, start symbol, components and every rule.
std::vector<SystemIssue> validate_system(const GrammarSystem& sys);

/// Weakest class over all rules (the join). Precondition: system is valid.
RuleClass system_class(const GrammarSystem& sys);

class DerivationMode {
 public:
  enum class Kind { kTerminal, kStar, kExactly, kAtMost, kAtLeast };

  static DerivationMode terminal() { return DerivationMode(Kind::kTerminal, 0); }
  static DerivationMode star() { return DerivationMode(Kind::kStar, 0); }
  static DerivationMode exactly(int k) { return DerivationMode(Kind::kExactly, k); }
  static DerivationMode at_most(int k) { return DerivationMode(Kind::kAtMost, k); }
  static DerivationMode at_least(int k) { return DerivationMode(Kind::kAtLeast, k); }

  /// Accepts `t`, `star`, `*`, `=k`, `<=k`, `>=k`. Throws std::invalid_argument.
  static DerivationMode parse(std::string_view text);

  Kind kind() const { return kind_; }
  int k() const { return k_; }
  std::string to_string() const;

  friend bool operator==(const DerivationMode&, const DerivationMode&) = default;

 private:
  DerivationMode(Kind kind, int k);
  Kind kind_;
  int k_;
};

struct EnumerationBounds {
  std::size_t max_cells = 20;
  std::size_t max_states = 1'000'000;
  std::size_t max_closure_depth = 100'000;

  /// Throws std::invalid_argument when any bound is zero.
  void validate() const;
};

/// One rule application inside a component step.
struct Application {
  std::size_t rule = 0;  // index into the component's rules
  HexCoord anchor;       // in the coordinates of the canonical picture it applies to
};

struct StepStats {
  std::size_t states = 0;
  std::size_t pruned_by_cells = 0;
};

/// Result of one component step. Pictures larger than max_cells are pruned;
/// since rules never remove cells this loses nothing within the bound, so
/// `truncated` is raised only by max_states or max_closure_depth.
struct StepResult {
  std::vector<CanonicalPicture> pictures;  // sorted with listing_less
  std::vector<std::vector<Application>> witnesses;  // parallel to pictures when requested
  bool truncated = false;
  StepStats stats;
};

/// Prunes sentential forms that cannot lead to a wanted result.
using PictureFilter = std::function<bool(const HexPicture&)>;

struct StepOptions {
  bool record_witnesses = false;
  PictureFilter keep;  // optional
  /// t mode only: follow a single persistent application where one exists.
  /// The set of stuck results is unchanged; witnesses may differ.
  bool reduce = true;
};

/// All pictures reachable from `p` with the rules of `comp` under `mode`.
StepResult step_mode(const HexPicture& p, const Component& comp, const DerivationMode& mode,
                     const EnumerationBounds& bounds, const StepOptions& options = {});

/// Pictures y with p =>+ y inside `comp` such that no rule of `comp` applies to y.
StepResult t_closure(const HexPicture& p, const Component& comp, const EnumerationBounds& bounds,
                     const StepOptions& options = {});

struct EnumerationStats {
  std::size_t sentential_forms = 0;
  std::size_t step_states = 0;
  std::size_t pruned_by_cells = 0;
};

struct EnumerationResult {
  std::vector<CanonicalPicture> pictures;  // all-terminal, sorted with listing_less
  bool exhaustive = true;                  // complete for every picture with <= max_cells cells
  EnumerationStats stats;
};

struct EnumerationOptions {
  unsigned jobs = 1;
};

/// Breadth-first search over canonical sentential forms from {(0,0): start}.
EnumerationResult enumerate_language(const GrammarSystem& sys, const DerivationMode& mode,
                                     const EnumerationBounds& bounds, const EnumerationOptions& options = {});

struct TraceStep {
  std::size_t component = 0;
  std::string rule_label;
  HexCoord anchor;
  CanonicalPicture result;
};

struct DerivationTrace {
  CanonicalPicture start;
  std::vector<TraceStep> steps;
};

enum class TraceStatus { kFound, kNotFound, kUnknown };

struct TraceOutcome {
  TraceStatus status = TraceStatus::kUnknown;
  std::optional<DerivationTrace> trace;
  EnumerationStats stats;
};

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bounded search for a derivation of `target`. kNotFound is returned only
/// when the search within the bounds was exhaustive. Throws EngineError when
/// the target is not all-terminal.
TraceOutcome trace_membership(const GrammarSystem& sys, const DerivationMode& mode, const HexPicture& target,
                              const EnumerationBounds& bounds);

/// Re-applies every step and checks each recorded picture.
bool replay_trace(const GrammarSystem& sys, const DerivationTrace& trace);

CanonicalPicture start_picture(const GrammarSystem& sys);
bool all_terminal(const HexPicture& p, const Alphabet& alphabet);

}  // namespace hags
