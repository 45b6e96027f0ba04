#include "hags/engine.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace hags {

// ---------------------------------------------------------------------------
// Systems

std::vector<SystemIssue> validate_system(const GrammarSystem& sys) {
  std::vector<SystemIssue> out;
  auto sys_issue = [&out](RuleIssueCode code, std::string msg) {
    out.push_back({0, std::nullopt, RuleIssue{code, std::nullopt, std::move(msg)}});
  };
  const Alphabet& ab = sys.alphabet;
  for (const Symbol& s : ab.nonterminals)
    if (ab.terminals.contains(s)) sys_issue(RuleIssueCode::kBadSystem, "'" + s + "' is both terminal and nonterminal");
  for (const auto* set : {&ab.nonterminals, &ab.terminals})
    for (const Symbol& s : *set)
      if (s == kBlank || !is_symbol_token(s)) sys_issue(RuleIssueCode::kBadSystem, "'" + s + "' is not a valid symbol");
  if (!ab.is_nonterminal(sys.start))
    sys_issue(RuleIssueCode::kUndeclaredSymbol, "start symbol '" + sys.start + "' is not a declared nonterminal");
  if (sys.components.empty()) sys_issue(RuleIssueCode::kBadSystem, "system has no components");

  for (std::size_t ci = 0; ci < sys.components.size(); ++ci) {
    const Component& comp = sys.components[ci];
    if (comp.rules.empty())
      out.push_back({ci, std::nullopt, RuleIssue{RuleIssueCode::kBadSystem, std::nullopt,
                                                 "component '" + comp.name + "' has no rules"}});
    std::unordered_set<std::string> labels;
    for (std::size_t ri = 0; ri < comp.rules.size(); ++ri) {
      const HexRule& rule = comp.rules[ri];
      if (!labels.insert(rule.label).second)
        out.push_back({ci, ri, RuleIssue{RuleIssueCode::kDuplicateLabel, std::nullopt,
                                         "duplicate rule label '" + rule.label + "'"}});
      Classification c = classify_rule(rule, ab);
      for (RuleIssue& i : c.issues) out.push_back({ci, ri, std::move(i)});
      if (c.rule_class && *c.rule_class < sys.declared_class)
        out.push_back({ci, ri, RuleIssue{RuleIssueCode::kClassViolation, std::nullopt,
                                         "rule '" + rule.label + "' is " + std::string(to_string(*c.rule_class)) +
                                             ", weaker than the declared " +
                                             std::string(family_name(sys.declared_class))}});
    }
  }
  return out;
}

RuleClass system_class(const GrammarSystem& sys) {
  RuleClass join = RuleClass::kRegular;
  for (const Component& comp : sys.components)
    for (const HexRule& rule : comp.rules)
      if (auto c = classify_rule(rule, sys.alphabet).rule_class) join = std::min(join, *c);
  return join;
}

CanonicalPicture start_picture(const GrammarSystem& sys) {
  return canonicalize(HexPicture({Cell{{0, 0}, sys.start}}));
}

bool all_terminal(const HexPicture& p, const Alphabet& alphabet) {
  return std::all_of(p.cells().begin(), p.cells().end(),
                     [&](const Cell& c) { return alphabet.is_terminal(c.symbol); });
}

// ---------------------------------------------------------------------------
// Modes and bounds

DerivationMode::DerivationMode(Kind kind, int k) : kind_(kind), k_(k) {
  bool counted = kind == Kind::kExactly || kind == Kind::kAtMost || kind == Kind::kAtLeast;
  if (counted && k < 1) throw std::invalid_argument("derivation mode bound must be positive");
}

DerivationMode DerivationMode::parse(std::string_view text) {
  if (text == "t") return terminal();
  if (text == "star" || text == "*") return star();
  auto number = [&](std::string_view digits) {
    int k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
      throw std::invalid_argument("bad derivation mode '" + std::string(text) + "'");
    return k;
  };
  if (text.starts_with("<=")) return at_most(number(text.substr(2)));
  if (text.starts_with(">=")) return at_least(number(text.substr(2)));
  if (text.starts_with("=")) return exactly(number(text.substr(1)));
  throw std::invalid_argument("bad derivation mode '" + std::string(text) + "'");
}

std::string DerivationMode::to_string() const {
  switch (kind_) {
    case Kind::kTerminal: return "t";
    case Kind::kStar: return "star";
    case Kind::kExactly: return "=" + std::to_string(k_);
    case Kind::kAtMost: return "<=" + std::to_string(k_);
    case Kind::kAtLeast: return ">=" + std::to_string(k_);
  }
  return "?";
}

void EnumerationBounds::validate() const {
  if (max_cells == 0 || max_states == 0 || max_closure_depth == 0)
    throw std::invalid_argument("enumeration bounds must be positive");
}

// ---------------------------------------------------------------------------
// Component steps

namespace {

using PictureIndex = std::unordered_map<CanonicalPicture, std::size_t, PictureHash>;

std::vector<CompiledRule> compile(const Component& comp) {
  std::vector<CompiledRule> out;
  out.reserve(comp.rules.size());
  for (const HexRule& r : comp.rules) out.emplace_back(r);
  return out;
}

// Persistent single applications for the t mode. An enabled application t
// qualifies when it has no permit, removes no symbol that any permit names,
// and no other application that could fire while t has not (judged from
// the current picture within the remaining cell budget) touches t's cells.
// Every stuck picture reachable from here is then reachable through t.
class Reducer {
 public:
  explicit Reducer(const std::vector<CompiledRule>& rules) : rules_(rules) {
    for (const CompiledRule& cr : rules) {
      const HexRule& r = cr.rule();
      permit_symbols_.insert(r.permit.begin(), r.permit.end());
      for (const auto& [off, sym] : r.lhs.entries) {
        auto it = r.rhs.entries.find(off);
        if (sym && (it == r.rhs.entries.end() || it->second != sym)) mutable_.insert(*sym);
      }
    }
    for (const CompiledRule& cr : rules) {
      const HexRule& r = cr.rule();
      std::vector<std::pair<HexCoord, Symbol>> drivers;
      std::vector<HexCoord> footprint;
      for (const auto& [off, sym] : r.lhs.entries) {
        footprint.push_back(off);
        if (sym && mutable_.contains(*sym)) drivers.emplace_back(off, *sym);
      }
      for (const auto& [off, _] : r.rhs.entries)
        if (!r.lhs.entries.contains(off)) footprint.push_back(off);
      if (drivers.empty()) usable_ = false;
      drivers_.push_back(std::move(drivers));
      footprints_.push_back(std::move(footprint));
    }
  }

  std::optional<std::size_t> persistent(const HexPicture& p, const std::vector<Application>& apps,
                                        std::size_t max_cells) const {
    if (!usable_ || apps.size() < 2) return std::nullopt;
    Scan scan{p, max_cells > p.size() ? max_cells - p.size() : 0, {}};
    std::size_t tried = 0;
    for (std::size_t i = 0; i < apps.size() && tried < kMaxCandidates; ++i) {
      const HexRule& r = rules_[apps[i].rule].rule();
      if (!r.permit.empty() || removes_permit_symbol(r)) continue;
      if (overlaps_enabled(apps, i)) continue;
      ++tried;
      if (independent(scan, apps[i])) return i;
    }
    return std::nullopt;
  }

 private:
  static constexpr std::size_t kMaxCandidates = 2;
  static constexpr std::size_t kMaxVisits = 4096;  // past this, give up and expand fully

  struct Scan {
    const HexPicture& p;
    std::size_t budget;
    std::map<HexCoord, bool> reachable;  // blank cells that a bounded picture can still occupy
  };

  bool overlaps_enabled(const std::vector<Application>& apps, std::size_t i) const {
    for (std::size_t j = 0; j < apps.size(); ++j) {
      if (j == i) continue;
      for (HexCoord a : footprints_[apps[i].rule])
        for (HexCoord b : footprints_[apps[j].rule])
          if (apps[i].anchor + a == apps[j].anchor + b) return true;
    }
    return false;
  }

  bool removes_permit_symbol(const HexRule& r) const {
    for (const auto& [off, sym] : r.lhs.entries) {
      if (!sym || !permit_symbols_.contains(*sym)) continue;
      auto it = r.rhs.entries.find(off);
      if (it == r.rhs.entries.end() || it->second != sym) return true;
    }
    return false;
  }

  static bool within_budget(Scan& scan, HexCoord c) {
    auto [it, fresh] = scan.reachable.try_emplace(c, false);
    if (fresh) {
      int best = std::numeric_limits<int>::max();
      for (const Cell& cell : scan.p.cells()) {
        int dq = c.q - cell.at.q, dr = c.r - cell.at.r;
        best = std::min(best, (std::abs(dq) + std::abs(dr) + std::abs(dq + dr)) / 2);
      }
      it->second = static_cast<std::size_t>(best) <= scan.budget;
    }
    return it->second;
  }

  using Fact = std::pair<HexCoord, Symbol>;  // cell c may hold symbol s at some point

  // Could rule `ri` match at `anchor`, given the facts gathered so far? Blank
  // requirements need a currently blank cell, since cells never empty again.
  bool feasible(Scan& scan, const std::set<Fact>& facts, std::size_t ri, HexCoord anchor) const {
    const HexRule& r = rules_[ri].rule();
    for (const auto& [off, want] : r.lhs.entries) {
      HexCoord c = anchor + off;
      if (!want) {
        if (scan.p.occupied(c)) return false;
      } else if (!facts.contains({c, *want})) {
        return false;
      }
    }
    for (const auto& [off, sym] : r.rhs.entries) {
      HexCoord c = anchor + off;
      if (sym && !scan.p.occupied(c) && !within_budget(scan, c)) return false;
    }
    return true;
  }

  bool independent(Scan& scan, const Application& t) const {
    std::set<HexCoord> footprint;
    for (HexCoord off : footprints_[t.rule]) footprint.insert(t.anchor + off);

    std::set<Fact> facts;
    std::set<std::pair<std::size_t, HexCoord>> candidates;
    std::set<std::pair<std::size_t, HexCoord>> fired;
    auto learn = [&](HexCoord at, const Symbol& sym) {
      if (!facts.emplace(at, sym).second || !mutable_.contains(sym)) return;
      for (std::size_t ri = 0; ri < rules_.size(); ++ri)
        for (const auto& [off, dsym] : drivers_[ri])
          if (dsym == sym && !(ri == t.rule && at - off == t.anchor)) candidates.emplace(ri, at - off);
    };
    for (const Cell& c : scan.p.cells()) learn(c.at, c.symbol);

    for (bool changed = true; changed;) {
      changed = false;
      if (candidates.size() > kMaxVisits) return false;
      std::vector<std::pair<std::size_t, HexCoord>> pending(candidates.begin(), candidates.end());
      for (const auto& [ri, anchor] : pending) {
        if (fired.contains({ri, anchor}) || !feasible(scan, facts, ri, anchor)) continue;
        fired.emplace(ri, anchor);
        changed = true;
        for (HexCoord foff : footprints_[ri])
          if (footprint.contains(anchor + foff)) return false;
        for (const auto& [woff, wsym] : rules_[ri].rule().rhs.entries)
          if (wsym) learn(anchor + woff, *wsym);
      }
    }
    return true;
  }

  const std::vector<CompiledRule>& rules_;
  std::set<Symbol> permit_symbols_;
  std::set<Symbol> mutable_;
  std::vector<std::vector<std::pair<HexCoord, Symbol>>> drivers_;
  std::vector<std::vector<HexCoord>> footprints_;
  bool usable_ = true;
};

class StepExplorer {
 public:
  StepExplorer(const std::vector<CompiledRule>& rules, const EnumerationBounds& bounds, const StepOptions& options,
               StepResult& out)
      : rules_(rules), reducer_(rules), bounds_(bounds), options_(options), out_(out) {}

  struct Successor {
    Application via;
    CanonicalPicture picture;
  };

  std::size_t add_root(CanonicalPicture p) {
    nodes_.push_back({std::move(p), kNoParent, {}, 0});
    return 0;
  }

  std::vector<Application> enabled(const HexPicture& src) const {
    std::vector<Application> apps;
    for (std::size_t ri = 0; ri < rules_.size(); ++ri)
      for (Occurrence occ : rules_[ri].find_occurrences(src)) apps.push_back({ri, occ.anchor});
    return apps;
  }

  // Results of `apps` within max_cells and the keep filter.
  std::vector<Successor> successors(const HexPicture& src, const std::vector<Application>& apps) {
    std::vector<Successor> succ;
    for (const Application& app : apps) {
      HexPicture next = rules_[app.rule].apply_unchecked(src, Occurrence{app.anchor});
      if (next.size() > bounds_.max_cells) {
        ++out_.stats.pruned_by_cells;
        continue;
      }
      if (options_.keep && !options_.keep(next)) continue;
      succ.push_back({app, canonicalize(next)});
    }
    return succ;
  }

  // Successors within max_cells (and the keep filter). `any` reports whether
  // some rule occurrence existed at all, pruned or not.
  std::vector<Successor> expand(std::size_t id, bool& any) {
    const HexPicture& src = nodes_[id].picture.picture();
    auto apps = enabled(src);
    any = !apps.empty();
    return successors(src, apps);
  }

  // As expand, but keeps only a persistent application when the reducer finds one.
  std::vector<Successor> expand_reduced(std::size_t id, bool& any) {
    const HexPicture& src = nodes_[id].picture.picture();
    auto apps = enabled(src);
    any = !apps.empty();
    if (options_.reduce)
      if (auto k = reducer_.persistent(src, apps, bounds_.max_cells)) apps = {apps[*k]};
    return successors(src, apps);
  }

  // Returns false when the state budget is exhausted.
  bool add(CanonicalPicture p, std::size_t parent, Application via, std::size_t& id_out) {
    if (nodes_.size() >= bounds_.max_states) {
      out_.truncated = true;
      return false;
    }
    id_out = nodes_.size();
    nodes_.push_back({std::move(p), parent, via, nodes_[parent].depth + 1});
    return true;
  }

  std::size_t depth(std::size_t id) const { return nodes_[id].depth; }
  const CanonicalPicture& picture(std::size_t id) const { return nodes_[id].picture; }

  std::vector<Application> witness(std::size_t id) const {
    std::vector<Application> path;
    for (std::size_t cur = id; nodes_[cur].parent != kNoParent; cur = nodes_[cur].parent)
      path.push_back(nodes_[cur].via);
    std::reverse(path.begin(), path.end());
    return path;
  }

  void emit(const std::vector<std::size_t>& ids) {
    std::vector<std::size_t> order;
    std::unordered_set<CanonicalPicture, PictureHash> dedup;
    for (std::size_t id : ids)
      if (dedup.insert(nodes_[id].picture).second) order.push_back(id);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return listing_less(nodes_[a].picture, nodes_[b].picture); });
    for (std::size_t id : order) {
      out_.pictures.push_back(nodes_[id].picture);
      if (options_.record_witnesses) out_.witnesses.push_back(witness(id));
    }
    out_.stats.states = nodes_.size();
  }

  // Nodes at exactly `layers` applications; fills `all_layers` with the ids of
  // layers 1..layers. Returns the ids of the last layer.
  std::vector<std::size_t> layered(std::size_t layers, std::vector<std::size_t>& all_layers) {
    std::vector<std::size_t> cur{0};
    std::size_t reachable = std::min(layers, bounds_.max_closure_depth);
    if (layers > bounds_.max_closure_depth) out_.truncated = true;
    for (std::size_t j = 1; j <= reachable && !cur.empty(); ++j) {
      PictureIndex layer;
      std::vector<std::size_t> next;
      for (std::size_t id : cur) {
        bool any = false;
        for (Successor& s : expand(id, any)) {
          if (layer.contains(s.picture)) continue;
          std::size_t nid = 0;
          if (!add(s.picture, id, s.via, nid)) {
            all_layers.insert(all_layers.end(), next.begin(), next.end());
            return {};
          }
          layer.emplace(std::move(s.picture), nid);
          next.push_back(nid);
        }
      }
      all_layers.insert(all_layers.end(), next.begin(), next.end());
      cur = std::move(next);
    }
    if (reachable < layers) return {};
    return cur;
  }

  // Reflexive closure of `seeds`; returns every node reached.
  std::vector<std::size_t> closure(const std::vector<std::size_t>& seeds) {
    PictureIndex seen;
    std::deque<std::size_t> queue;
    std::vector<std::size_t> reached;
    for (std::size_t id : seeds)
      if (seen.emplace(nodes_[id].picture, id).second) {
        queue.push_back(id);
        reached.push_back(id);
      }
    while (!queue.empty()) {
      std::size_t id = queue.front();
      queue.pop_front();
      bool any = false;
      auto succ = expand(id, any);
      if (!succ.empty() && depth(id) >= bounds_.max_closure_depth) {
        out_.truncated = true;
        continue;
      }
      for (Successor& s : succ) {
        if (seen.contains(s.picture)) continue;
        std::size_t nid = 0;
        if (!add(s.picture, id, s.via, nid)) return reached;
        seen.emplace(std::move(s.picture), nid);
        queue.push_back(nid);
        reached.push_back(nid);
      }
    }
    return reached;
  }

  // Stuck pictures reachable in at least one step.
  std::vector<std::size_t> terminal_closure() {
    PictureIndex seen;
    seen.emplace(nodes_[0].picture, 0);
    std::deque<std::size_t> queue{0};
    std::vector<std::size_t> stuck;
    while (!queue.empty()) {
      std::size_t id = queue.front();
      queue.pop_front();
      bool any = false;
      auto succ = expand_reduced(id, any);
      if (!any) {
        if (id != 0) stuck.push_back(id);
        continue;
      }
      if (depth(id) >= bounds_.max_closure_depth) {
        out_.truncated = true;
        continue;
      }
      for (Successor& s : succ) {
        if (seen.contains(s.picture)) continue;
        std::size_t nid = 0;
        if (!add(s.picture, id, s.via, nid)) return stuck;
        seen.emplace(std::move(s.picture), nid);
        queue.push_back(nid);
      }
    }
    return stuck;
  }

 private:
  static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);
  struct Node {
    CanonicalPicture picture;
    std::size_t parent;
    Application via;
    std::size_t depth;
  };

  const std::vector<CompiledRule>& rules_;
  Reducer reducer_;
  const EnumerationBounds& bounds_;
  const StepOptions& options_;
  StepResult& out_;
  std::vector<Node> nodes_;
};

StepResult run_step(const HexPicture& p, const std::vector<CompiledRule>& rules, const DerivationMode& mode,
                    const EnumerationBounds& bounds, const StepOptions& options) {
  StepResult out;
  StepExplorer ex(rules, bounds, options, out);
  ex.add_root(canonicalize(p));
  std::vector<std::size_t> results;
  std::vector<std::size_t> layers;
  switch (mode.kind()) {
    case DerivationMode::Kind::kTerminal:
      results = ex.terminal_closure();
      break;
    case DerivationMode::Kind::kExactly:
      results = ex.layered(static_cast<std::size_t>(mode.k()), layers);
      break;
    case DerivationMode::Kind::kAtMost:
      ex.layered(static_cast<std::size_t>(mode.k()), layers);
      results = layers;
      break;
    case DerivationMode::Kind::kStar:
    case DerivationMode::Kind::kAtLeast: {
      std::size_t k = mode.kind() == DerivationMode::Kind::kStar ? 1 : static_cast<std::size_t>(mode.k());
      auto seeds = ex.layered(k, layers);
      if (!out.truncated) results = ex.closure(seeds);
      break;
    }
  }
  ex.emit(results);
  return out;
}

}  // namespace

StepResult step_mode(const HexPicture& p, const Component& comp, const DerivationMode& mode,
                     const EnumerationBounds& bounds, const StepOptions& options) {
  bounds.validate();
  return run_step(p, compile(comp), mode, bounds, options);
}

StepResult t_closure(const HexPicture& p, const Component& comp, const EnumerationBounds& bounds,
                     const StepOptions& options) {
  return step_mode(p, comp, DerivationMode::terminal(), bounds, options);
}

// ---------------------------------------------------------------------------
// Language-level search

namespace {

struct Expansion {
  std::vector<StepResult> per_component;
};

// Expands every frontier picture with every component; `jobs` worker threads
// share the frontier, each writing only its own slots.
std::vector<Expansion> expand_frontier(const std::vector<CanonicalPicture>& frontier,
                                       const std::vector<std::vector<CompiledRule>>& comps, const DerivationMode& mode,
                                       const EnumerationBounds& bounds, const StepOptions& options, unsigned jobs) {
  std::vector<Expansion> out(frontier.size());
  auto work = [&](std::size_t i) {
    out[i].per_component.reserve(comps.size());
    for (const auto& rules : comps) out[i].per_component.push_back(run_step(frontier[i], rules, mode, bounds, options));
  };
  if (jobs <= 1 || frontier.size() < 2) {
    for (std::size_t i = 0; i < frontier.size(); ++i) work(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(frontier.size()));
  for (unsigned t = 0; t < n; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < frontier.size(); i = next++) work(i);
    });
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace

EnumerationResult enumerate_language(const GrammarSystem& sys, const DerivationMode& mode,
                                     const EnumerationBounds& bounds, const EnumerationOptions& options) {
  bounds.validate();
  std::vector<std::vector<CompiledRule>> comps;
  for (const Component& c : sys.components) comps.push_back(compile(c));

  EnumerationResult result;
  std::unordered_set<CanonicalPicture, PictureHash> seen;
  std::unordered_set<CanonicalPicture, PictureHash> language;
  std::vector<CanonicalPicture> frontier{start_picture(sys)};
  seen.insert(frontier.front());
  const StepOptions step_options;

  while (!frontier.empty()) {
    auto expansions = expand_frontier(frontier, comps, mode, bounds, step_options, options.jobs);
    std::vector<CanonicalPicture> next;
    for (Expansion& e : expansions) {
      for (StepResult& r : e.per_component) {
        if (r.truncated) result.exhaustive = false;
        result.stats.step_states += r.stats.states;
        result.stats.pruned_by_cells += r.stats.pruned_by_cells;
        for (CanonicalPicture& pic : r.pictures) {
          if (all_terminal(pic, sys.alphabet)) {
            language.insert(pic);
            continue;
          }
          if (seen.contains(pic)) continue;
          if (seen.size() >= bounds.max_states) {
            result.exhaustive = false;
            continue;
          }
          seen.insert(pic);
          next.push_back(std::move(pic));
        }
      }
    }
    frontier = std::move(next);
  }
  result.stats.sentential_forms = seen.size();
  result.pictures.assign(language.begin(), language.end());
  std::sort(result.pictures.begin(), result.pictures.end(), listing_less);
  return result;
}

namespace {

// True when some translation of `p` fits inside `target` with every terminal
// cell of `p` carrying the target's symbol there.
bool embeds(const HexPicture& p, const HexPicture& target, const Alphabet& ab) {
  const Cell& first = p.cells().front();
  for (const Cell& t : target.cells()) {
    HexCoord shift = t.at - first.at;
    bool ok = std::all_of(p.cells().begin(), p.cells().end(), [&](const Cell& c) {
      const Symbol* s = target.at(c.at + shift);
      return s && (!ab.is_terminal(c.symbol) || *s == c.symbol);
    });
    if (ok) return true;
  }
  return false;
}

}  // namespace

TraceOutcome trace_membership(const GrammarSystem& sys, const DerivationMode& mode, const HexPicture& target,
                              const EnumerationBounds& bounds) {
  bounds.validate();
  if (!all_terminal(target, sys.alphabet)) throw EngineError("TARGET_NOT_TERMINAL: trace target has nonterminal cells");
  CanonicalPicture goal = canonicalize(target);

  EnumerationBounds b = bounds;
  b.max_cells = std::min(bounds.max_cells, goal.size());
  StepOptions options;
  options.record_witnesses = true;
  options.keep = [&](const HexPicture& p) { return embeds(p, goal.picture(), sys.alphabet); };

  std::vector<std::vector<CompiledRule>> comps;
  for (const Component& c : sys.components) comps.push_back(compile(c));

  struct Parent {
    std::size_t from;
    std::size_t component;
    std::vector<Application> path;
  };
  std::vector<CanonicalPicture> states{start_picture(sys)};
  std::vector<std::optional<Parent>> parents{std::nullopt};
  PictureIndex index;
  index.emplace(states.front(), 0);

  TraceOutcome outcome;
  bool exhaustive = bounds.max_cells >= goal.size();
  std::optional<std::size_t> found;
  std::vector<std::size_t> frontier{0};

  while (!frontier.empty() && !found) {
    std::vector<CanonicalPicture> pics;
    for (std::size_t id : frontier) pics.push_back(states[id]);
    auto expansions = expand_frontier(pics, comps, mode, b, options, 1);
    std::vector<std::size_t> next;
    for (std::size_t fi = 0; fi < frontier.size() && !found; ++fi) {
      for (std::size_t ci = 0; ci < comps.size() && !found; ++ci) {
        StepResult& r = expansions[fi].per_component[ci];
        if (r.truncated) exhaustive = false;
        outcome.stats.step_states += r.stats.states;
        outcome.stats.pruned_by_cells += r.stats.pruned_by_cells;
        for (std::size_t k = 0; k < r.pictures.size(); ++k) {
          if (index.contains(r.pictures[k])) continue;
          if (states.size() >= bounds.max_states) {
            exhaustive = false;
            break;
          }
          std::size_t id = states.size();
          index.emplace(r.pictures[k], id);
          states.push_back(r.pictures[k]);
          parents.push_back(Parent{frontier[fi], ci, std::move(r.witnesses[k])});
          if (states[id] == goal) {
            found = id;
            break;
          }
          if (!all_terminal(states[id], sys.alphabet)) next.push_back(id);
        }
      }
    }
    frontier = std::move(next);
  }
  outcome.stats.sentential_forms = states.size();

  if (!found) {
    outcome.status = exhaustive ? TraceStatus::kNotFound : TraceStatus::kUnknown;
    return outcome;
  }

  std::vector<std::size_t> chain;
  for (std::size_t cur = *found; parents[cur]; cur = parents[cur]->from) chain.push_back(cur);
  std::reverse(chain.begin(), chain.end());

  DerivationTrace trace{states.front(), {}};
  CanonicalPicture cur = states.front();
  for (std::size_t id : chain) {
    const Parent& par = *parents[id];
    for (const Application& app : par.path) {
      const CompiledRule& rule = comps[par.component][app.rule];
      cur = canonicalize(rule.apply_unchecked(cur, Occurrence{app.anchor}));
      trace.steps.push_back({par.component, rule.rule().label, app.anchor, cur});
    }
  }
  outcome.status = TraceStatus::kFound;
  outcome.trace = std::move(trace);
  return outcome;
}

bool replay_trace(const GrammarSystem& sys, const DerivationTrace& trace) {
  if (trace.start != start_picture(sys)) return false;
  CanonicalPicture cur = trace.start;
  for (const TraceStep& step : trace.steps) {
    if (step.component >= sys.components.size()) return false;
    const auto& rules = sys.components[step.component].rules;
    auto it = std::find_if(rules.begin(), rules.end(), [&](const HexRule& r) { return r.label == step.rule_label; });
    if (it == rules.end()) return false;
    CompiledRule rule(*it);
    if (!rule.matches_at(cur, step.anchor)) return false;
    cur = canonicalize(rule.apply_unchecked(cur, Occurrence{step.anchor}));
    if (cur != step.result) return false;
  }
  return true;
}

}  // namespace hags
