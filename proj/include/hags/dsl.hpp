#pragma once

// The .hags grammar-system text format.
//
//   # comment (only at the start of a line)
//   system G1
//   class CFHA                      (optional: REGHA | CFHA | ISOHA, default CFHA)
//   nonterminals { A, A', B, S }
//   terminals { a }
//   start S
//   component P1 {
//     rule 1: [ (0,0): S -> a ; (1,-1): # -> A ; (0,1): # -> B ]
//     rule 2: [ (0,0): A -> a ; (1,-1): # -> A' ] permit { B }
//   }
//
// Offsets are axial (q,r) relative to the anchor (0,0). `#` is the blank and
// `_` marks an offset absent from that side (only useful for reporting shape
// mismatches).

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hags/engine.hpp"

namespace hags {

enum class DslErrc {
  kSyntax,
  kUndeclaredSymbol,
  kDuplicateLabel,
  kBlankDeclared,
  kRuleInvalid,
  kSystemInvalid,
};

std::string_view to_string(DslErrc c);

struct DslDiagnostic {
  DslErrc code;
  std::size_t line = 0;
  std::size_t column = 0;
  std::string detail;  // for kRuleInvalid, the grammar_core code name comes first
};

class DslError : public std::runtime_error {
 public:
  explicit DslError(std::vector<DslDiagnostic> diagnostics);
  const std::vector<DslDiagnostic>& diagnostics() const { return diagnostics_; }
  DslErrc code() const { return diagnostics_.front().code; }

 private:
  std::vector<DslDiagnostic> diagnostics_;
};

/// Parses and validates. Throws DslError listing every problem found (syntax
/// errors stop parsing at the first one).
GrammarSystem parse_system(std::string_view text);

/// Canonical text: sorted declarations, one rule per line, anchor entry first
/// then row-major offsets, empty permit sets omitted.
std::string serialize_system(const GrammarSystem& sys);

std::string read_text_file(const std::string& path);

}  // namespace hags
