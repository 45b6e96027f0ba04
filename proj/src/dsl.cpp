#include "hags/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace hags {

std::string_view to_string(DslErrc c) {
  switch (c) {
    case DslErrc::kSyntax: return "SYNTAX";
    case DslErrc::kUndeclaredSymbol: return "UNDECLARED_SYMBOL";
    case DslErrc::kDuplicateLabel: return "DUPLICATE_LABEL";
    case DslErrc::kBlankDeclared: return "BLANK_DECLARED";
    case DslErrc::kRuleInvalid: return "RULE_INVALID";
    case DslErrc::kSystemInvalid: return "SYSTEM_INVALID";
  }
  return "?";
}

namespace {

std::string describe(const std::vector<DslDiagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) {
    if (!out.empty()) out += "\n";
    out += std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + std::string(to_string(d.code)) + ": " +
           d.detail;
  }
  return out;
}

enum class Tok { kWord, kHash, kLBrace, kRBrace, kLBracket, kRBracket, kLParen, kRParen, kComma, kColon, kSemi, kArrow, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '_'; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  bool line_start = true;
  auto fail = [&](const std::string& msg) {
    throw DslError({DslDiagnostic{DslErrc::kSyntax, line, col, msg}});
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      line_start = true;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (c == '#' && line_start) {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    line_start = false;
    std::size_t start_col = col;
    auto single = [&](Tok t) {
      out.push_back({t, std::string(1, c), line, start_col});
      ++i;
      ++col;
    };
    switch (c) {
      case '#': single(Tok::kHash); continue;
      case '{': single(Tok::kLBrace); continue;
      case '}': single(Tok::kRBrace); continue;
      case '[': single(Tok::kLBracket); continue;
      case ']': single(Tok::kRBracket); continue;
      case '(': single(Tok::kLParen); continue;
      case ')': single(Tok::kRParen); continue;
      case ',': single(Tok::kComma); continue;
      case ':': single(Tok::kColon); continue;
      case ';': single(Tok::kSemi); continue;
      default: break;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::kArrow, "->", line, start_col});
      i += 2;
      col += 2;
      continue;
    }
    if (word_char(c) || (c == '-' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i + 1;
      while (j < src.size() && word_char(src[j])) ++j;
      out.push_back({Tok::kWord, std::string(src.substr(i, j - i)), line, start_col});
      col += j - i;
      i = j;
      continue;
    }
    fail(std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::kEnd, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  GrammarSystem run() {
    GrammarSystem sys;
    bool have_start = false;
    while (peek().kind != Tok::kEnd) {
      const Token& kw = expect(Tok::kWord, "a declaration keyword");
      if (kw.text == "system") {
        sys.name = expect(Tok::kWord, "a system name").text;
      } else if (kw.text == "class") {
        const Token& t = expect(Tok::kWord, "a family name");
        auto c = parse_family_name(t.text);
        if (!c) syntax(t, "unknown family '" + t.text + "' (expected REGHA, CFHA or ISOHA)");
        sys.declared_class = *c;
      } else if (kw.text == "nonterminals" || kw.text == "terminals") {
        auto& target = kw.text == "terminals" ? sys.alphabet.terminals : sys.alphabet.nonterminals;
        for (const Token& t : symbol_list(true)) target.insert(t.text);
      } else if (kw.text == "start") {
        start_tok_ = expect(Tok::kWord, "a start symbol");
        sys.start = start_tok_.text;
        have_start = true;
      } else if (kw.text == "component") {
        sys.components.push_back(component());
      } else {
        syntax(kw, "unknown declaration '" + kw.text + "'");
      }
    }
    if (!have_start) diags_.push_back({DslErrc::kSystemInvalid, peek().line, peek().column, "missing start declaration"});
    check(sys);
    if (!diags_.empty()) throw DslError(diags_);
    return sys;
  }

 private:
  struct RuleSource {
    std::size_t component;
    std::size_t rule;
    Token label;
    std::vector<Token> symbols;
  };

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void syntax(const Token& t, const std::string& msg) {
    throw DslError({DslDiagnostic{DslErrc::kSyntax, t.line, t.column, msg}});
  }

  const Token& expect(Tok kind, const std::string& what) {
    const Token& t = next();
    if (t.kind != kind) syntax(t, "expected " + what + ", found '" + t.text + "'");
    return t;
  }

  std::vector<Token> symbol_list(bool declaration) {
    expect(Tok::kLBrace, "'{'");
    std::vector<Token> out;
    if (peek().kind == Tok::kRBrace) {
      next();
      return out;
    }
    while (true) {
      const Token& t = next();
      if (t.kind == Tok::kHash && declaration) {
        diags_.push_back({DslErrc::kBlankDeclared, t.line, t.column, "the blank '#' cannot be declared as a symbol"});
      } else if (t.kind != Tok::kWord || !is_symbol_token(t.text)) {
        syntax(t, "expected a symbol, found '" + t.text + "'");
      } else {
        out.push_back(t);
      }
      const Token& sep = next();
      if (sep.kind == Tok::kRBrace) break;
      if (sep.kind != Tok::kComma) syntax(sep, "expected ',' or '}'");
    }
    return out;
  }

  int integer(const Token& t) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) syntax(t, "expected an integer, found '" + t.text + "'");
    return v;
  }

  // Returns nullopt for absent ('_'); a Pattern value of nullopt is the blank.
  std::optional<std::optional<Symbol>> side(RuleSource& src) {
    const Token& t = next();
    if (t.kind == Tok::kHash) return std::optional<Symbol>{};
    if (t.kind == Tok::kWord && t.text == "_") return std::nullopt;
    if (t.kind != Tok::kWord || !is_symbol_token(t.text)) syntax(t, "expected a symbol, '#' or '_'");
    src.symbols.push_back(t);
    return std::optional<Symbol>{t.text};
  }

  Component component() {
    Component comp;
    comp.name = expect(Tok::kWord, "a component name").text;
    expect(Tok::kLBrace, "'{'");
    while (peek().kind != Tok::kRBrace) {
      const Token& kw = expect(Tok::kWord, "'rule' or '}'");
      if (kw.text != "rule") syntax(kw, "expected 'rule', found '" + kw.text + "'");
      comp.rules.push_back(rule(comp.rules.size()));
    }
    next();
    ++component_index_;
    return comp;
  }

  HexRule rule(std::size_t index) {
    RuleSource src{component_index_, index, expect(Tok::kWord, "a rule label"), {}};
    HexRule rule;
    rule.label = src.label.text;
    expect(Tok::kColon, "':'");
    expect(Tok::kLBracket, "'['");
    while (true) {
      const Token& open = expect(Tok::kLParen, "'('");
      int q = integer(expect(Tok::kWord, "an integer"));
      expect(Tok::kComma, "','");
      int r = integer(expect(Tok::kWord, "an integer"));
      expect(Tok::kRParen, "')'");
      expect(Tok::kColon, "':'");
      HexCoord off{q, r};
      if (rule.lhs.entries.contains(off) || rule.rhs.entries.contains(off))
        syntax(open, "offset " + hags::to_string(off) + " listed twice");
      auto lhs = side(src);
      expect(Tok::kArrow, "'->'");
      auto rhs = side(src);
      if (lhs) rule.lhs.entries[off] = *lhs;
      if (rhs) rule.rhs.entries[off] = *rhs;
      const Token& sep = next();
      if (sep.kind == Tok::kRBracket) break;
      if (sep.kind != Tok::kSemi) syntax(sep, "expected ';' or ']'");
    }
    if (peek().kind == Tok::kWord && peek().text == "permit") {
      next();
      for (const Token& t : symbol_list(false)) {
        rule.permit.insert(t.text);
        src.symbols.push_back(t);
      }
    }
    sources_.push_back(std::move(src));
    return rule;
  }

  void check(const GrammarSystem& sys) {
    const Alphabet& ab = sys.alphabet;
    for (const Symbol& s : ab.nonterminals)
      if (ab.is_terminal(s))
        diags_.push_back({DslErrc::kSystemInvalid, 1, 1, "'" + s + "' declared both terminal and nonterminal"});
    if (!sys.start.empty() && !ab.is_nonterminal(sys.start))
      diags_.push_back({DslErrc::kUndeclaredSymbol, start_tok_.line, start_tok_.column,
                        "start symbol '" + sys.start + "' is not a declared nonterminal"});
    if (sys.components.empty()) diags_.push_back({DslErrc::kSystemInvalid, 1, 1, "no components"});

    for (const RuleSource& src : sources_) {
      const HexRule& rule = sys.components[src.component].rules[src.rule];
      bool undeclared = false;
      for (const Token& t : src.symbols)
        if (!ab.is_terminal(t.text) && !ab.is_nonterminal(t.text)) {
          diags_.push_back({DslErrc::kUndeclaredSymbol, t.line, t.column, "undeclared symbol '" + t.text + "'"});
          undeclared = true;
        }
      const auto& rules = sys.components[src.component].rules;
      for (std::size_t j = 0; j < src.rule; ++j)
        if (rules[j].label == rule.label)
          diags_.push_back({DslErrc::kDuplicateLabel, src.label.line, src.label.column,
                            "duplicate rule label '" + rule.label + "'"});
      if (undeclared) continue;
      Classification c = classify_rule(rule, ab);
      for (const RuleIssue& i : c.issues)
        diags_.push_back({DslErrc::kRuleInvalid, src.label.line, src.label.column,
                          std::string(to_string(i.code)) + ": rule '" + rule.label + "': " + i.message});
      if (c.rule_class && *c.rule_class < sys.declared_class)
        diags_.push_back({DslErrc::kRuleInvalid, src.label.line, src.label.column,
                          "CLASS_VIOLATION: rule '" + rule.label + "' is " + std::string(to_string(*c.rule_class)) +
                              ", weaker than the declared " + std::string(family_name(sys.declared_class))});
    }
    for (std::size_t ci = 0; ci < sys.components.size(); ++ci)
      if (sys.components[ci].rules.empty())
        diags_.push_back({DslErrc::kSystemInvalid, 1, 1, "component '" + sys.components[ci].name + "' has no rules"});
    std::stable_sort(diags_.begin(), diags_.end(), [](const DslDiagnostic& a, const DslDiagnostic& b) {
      return std::tie(a.line, a.column) < std::tie(b.line, b.column);
    });
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t component_index_ = 0;
  Token start_tok_{Tok::kEnd, "", 1, 1};
  std::vector<RuleSource> sources_;
  std::vector<DslDiagnostic> diags_;
};

std::string join(const std::set<Symbol>& syms) {
  std::string out;
  for (const Symbol& s : syms) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

std::string side_text(const Pattern& p, HexCoord off) {
  auto it = p.entries.find(off);
  if (it == p.entries.end()) return "_";
  return it->second ? *it->second : std::string(kBlank);
}

}  // namespace

DslError::DslError(std::vector<DslDiagnostic> diagnostics)
    : std::runtime_error(describe(diagnostics)), diagnostics_(std::move(diagnostics)) {}

GrammarSystem parse_system(std::string_view text) { return Parser(lex(text)).run(); }

std::string serialize_system(const GrammarSystem& sys) {
  std::ostringstream out;
  out << "system " << (sys.name.empty() ? "unnamed" : sys.name) << "\n";
  out << "class " << family_name(sys.declared_class) << "\n";
  out << "nonterminals { " << join(sys.alphabet.nonterminals) << " }\n";
  out << "terminals { " << join(sys.alphabet.terminals) << " }\n";
  out << "start " << sys.start << "\n";
  for (const Component& comp : sys.components) {
    out << "\ncomponent " << comp.name << " {\n";
    for (const HexRule& rule : comp.rules) {
      std::set<HexCoord> offs = rule.lhs.offsets();
      for (const auto& [off, _] : rule.rhs.entries) offs.insert(off);
      std::vector<HexCoord> order;
      if (offs.contains(HexCoord{0, 0})) order.push_back({0, 0});
      for (HexCoord o : offs)
        if (o != HexCoord{0, 0}) order.push_back(o);
      out << "  rule " << rule.label << ": [ ";
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (i) out << " ; ";
        out << to_string(order[i]) << ": " << side_text(rule.lhs, order[i]) << " -> " << side_text(rule.rhs, order[i]);
      }
      out << " ]";
      if (!rule.permit.empty()) out << " permit { " << join(rule.permit) << " }";
      out << "\n";
    }
    out << "}\n";
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hags
