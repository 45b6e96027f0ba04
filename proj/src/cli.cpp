#include "hags/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "hags/dsl.hpp"
#include "hags/engine.hpp"
#include "hags/oracles.hpp"

namespace hags {

namespace {

struct Failure {
  int code;
  std::string message;
};

struct Options {
  std::string grammar;
  std::string second;
  std::string mode = "t";
  std::size_t max_cells = 20;
  std::size_t max_states = 1'000'000;
  std::size_t max_depth = 100'000;
  std::string format = "text";
  unsigned jobs = 1;
  std::string oracle;
  bool definitive = false;

  EnumerationBounds bounds() const {
    EnumerationBounds b{max_cells, max_states, max_depth};
    try {
      b.validate();
    } catch (const std::invalid_argument& e) {
      throw Failure{kExitUsage, e.what()};
    }
    return b;
  }

  DerivationMode derivation_mode() const {
    try {
      return DerivationMode::parse(mode);
    } catch (const std::invalid_argument& e) {
      throw Failure{kExitUsage, e.what()};
    }
  }

  bool records() const { return format == "records"; }
};

GrammarSystem load_system(const std::string& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::runtime_error& e) {
    throw Failure{kExitInvalidInput, e.what()};
  }
  try {
    return parse_system(text);
  } catch (const DslError& e) {
    std::string msg;
    for (const DslDiagnostic& d : e.diagnostics()) {
      if (!msg.empty()) msg += "\n";
      msg += path + ":" + std::to_string(d.line) + ":" + std::to_string(d.column) + ": ";
      if (d.code != DslErrc::kRuleInvalid) msg += std::string(to_string(d.code)) + ": ";
      msg += d.detail;
    }
    throw Failure{kExitInvalidInput, msg};
  }
}

CanonicalPicture load_picture(const std::string& path) {
  try {
    return parse_picture_text(read_text_file(path));
  } catch (const std::runtime_error& e) {
    throw Failure{kExitInvalidInput, path + ": " + e.what()};
  }
}

void print_picture(std::ostream& out, const Options& o, std::size_t index, const HexPicture& p) {
  if (o.records()) {
    out << "pic " << p.size() << " " << to_record(p) << "\n";
  } else {
    out << "[" << index << "] " << p.size() << " cells\n" << render_text(p) << "\n";
  }
}

std::string component_name(const GrammarSystem& sys, std::size_t i) {
  return sys.components[i].name.empty() ? "P" + std::to_string(i + 1) : sys.components[i].name;
}

int cmd_check(const Options& o, std::ostream& out) {
  GrammarSystem sys = load_system(o.grammar);
  std::size_t rules = 0;
  for (std::size_t ci = 0; ci < sys.components.size(); ++ci) {
    out << "component " << component_name(sys, ci) << "\n";
    for (const HexRule& r : sys.components[ci].rules) {
      out << "  rule " << r.label << ": " << to_string(*classify_rule(r, sys.alphabet).rule_class) << "\n";
      ++rules;
    }
  }
  std::size_t n = sys.components.size();
  out << family_name(system_class(sys)) << ", " << n << (n == 1 ? " component, " : " components, ") << rules
      << (rules == 1 ? " rule" : " rules") << "\n";
  return kExitOk;
}

EnumerationResult run_enumeration(const GrammarSystem& sys, const Options& o) {
  return enumerate_language(sys, o.derivation_mode(), o.bounds(), EnumerationOptions{std::max(1u, o.jobs)});
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  GrammarSystem sys = load_system(o.grammar);
  EnumerationResult res = run_enumeration(sys, o);
  for (std::size_t i = 0; i < res.pictures.size(); ++i) print_picture(out, o, i + 1, res.pictures[i]);
  if (o.records()) {
    out << "summary count=" << res.pictures.size() << " exhaustive=" << (res.exhaustive ? "true" : "false")
        << " forms=" << res.stats.sentential_forms << " max_cells=" << o.max_cells << "\n";
  } else {
    out << res.pictures.size() << " pictures, " << (res.exhaustive ? "exhaustive" : "NOT exhaustive")
        << " (max cells " << o.max_cells << ", " << res.stats.sentential_forms << " sentential forms)\n";
  }
  return !res.exhaustive && o.definitive ? kExitNotDefinitive : kExitOk;
}

int cmd_render(const Options& o, std::ostream& out) {
  CanonicalPicture p = load_picture(o.grammar);
  if (o.records())
    out << "pic " << p.size() << " " << to_record(p) << "\n";
  else
    out << render_text(p);
  return kExitOk;
}

int cmd_trace(const Options& o, std::ostream& out) {
  GrammarSystem sys = load_system(o.grammar);
  CanonicalPicture target = load_picture(o.second);
  TraceOutcome res;
  try {
    res = trace_membership(sys, o.derivation_mode(), target, o.bounds());
  } catch (const EngineError& e) {
    throw Failure{kExitInvalidInput, e.what()};
  }
  if (res.trace) {
    const auto& steps = res.trace->steps;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const TraceStep& s = steps[i];
      if (o.records()) {
        out << "step " << i + 1 << " component=" << component_name(sys, s.component) << " rule=" << s.rule_label
            << " anchor=" << s.anchor.q << "," << s.anchor.r << " pic=" << to_record(s.result) << "\n";
      } else {
        out << "step " << i + 1 << ": " << component_name(sys, s.component) << " rule " << s.rule_label << " at "
            << to_string(s.anchor) << "\n"
            << render_text(s.result) << "\n";
      }
    }
  }
  std::string status = res.status == TraceStatus::kFound      ? "FOUND"
                       : res.status == TraceStatus::kNotFound ? "NOT_FOUND"
                                                              : "UNKNOWN";
  out << "result " << status;
  if (res.trace) out << " steps=" << res.trace->steps.size();
  out << " forms=" << res.stats.sentential_forms << "\n";
  switch (res.status) {
    case TraceStatus::kFound: return kExitOk;
    case TraceStatus::kNotFound: return kExitDiffer;
    case TraceStatus::kUnknown: return kExitNotDefinitive;
  }
  return kExitNotDefinitive;
}

int cmd_compare(const Options& o, std::ostream& out) {
  if (o.second.empty() == o.oracle.empty()) throw Failure{kExitUsage, "compare needs exactly one of <grammar-b> or --oracle"};
  GrammarSystem a_sys = load_system(o.grammar);
  std::vector<CanonicalPicture> b;
  bool exhaustive = true;
  std::string b_name;
  if (!o.oracle.empty()) {
    auto fam = parse_oracle_family(o.oracle);
    if (!fam) throw Failure{kExitUsage, "unknown oracle family '" + o.oracle + "'"};
    b = oracle_language(*fam, o.max_cells);
    b_name = "oracle " + o.oracle;
  } else {
    EnumerationResult rb = run_enumeration(load_system(o.second), o);
    b = std::move(rb.pictures);
    exhaustive = rb.exhaustive;
    b_name = o.second;
  }
  EnumerationResult ra = run_enumeration(a_sys, o);
  exhaustive = exhaustive && ra.exhaustive;
  LanguageDiff d = compare_languages(std::move(ra.pictures), std::move(b));

  if (!o.records()) out << "only in " << o.grammar << ": " << d.only_a.size() << "\n";
  for (std::size_t i = 0; i < d.only_a.size(); ++i) {
    if (o.records()) out << "only_a ";
    print_picture(out, o, i + 1, d.only_a[i]);
  }
  if (!o.records()) out << "only in " << b_name << ": " << d.only_b.size() << "\n";
  for (std::size_t i = 0; i < d.only_b.size(); ++i) {
    if (o.records()) out << "only_b ";
    print_picture(out, o, i + 1, d.only_b[i]);
  }
  if (o.records())
    out << "summary only_a=" << d.only_a.size() << " only_b=" << d.only_b.size() << " common=" << d.common
        << " exhaustive=" << (exhaustive ? "true" : "false") << "\n";
  else
    out << "common: " << d.common << (exhaustive ? "" : " (NOT exhaustive)") << "\n";
  if (!exhaustive && o.definitive) return kExitNotDefinitive;
  return d.empty() ? kExitOk : kExitDiffer;
}

void add_bounds(CLI::App* sub, Options& o) {
  sub->add_option("--mode", o.mode, "derivation mode: t, star, =k, <=k, >=k")->capture_default_str();
  sub->add_option("--max-cells", o.max_cells, "largest picture kept")->capture_default_str();
  sub->add_option("--max-states", o.max_states, "state budget per search")->capture_default_str();
  sub->add_option("--max-depth", o.max_depth, "closure depth budget")->capture_default_str();
  sub->add_option("--jobs", o.jobs, "worker threads for enumeration")->capture_default_str();
  sub->add_flag("--definitive", o.definitive, "exit 4 when the search was not exhaustive");
}

void add_format(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "records"}))->capture_default_str();
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hexagonal array grammar systems with permitting symbols", "hags"};
  app.require_subcommand(1);
  Options o;

  CLI::App* check = app.add_subcommand("check", "validate a grammar system and classify its rules");
  check->add_option("grammar", o.grammar, ".hags file")->required();

  CLI::App* enumerate = app.add_subcommand("enumerate", "list the generated pictures up to the bounds");
  enumerate->add_option("grammar", o.grammar, ".hags file")->required();
  add_bounds(enumerate, o);
  add_format(enumerate, o);

  CLI::App* render = app.add_subcommand("render", "print a stored picture");
  render->add_option("picture", o.grammar, ".hpic file")->required();
  add_format(render, o);

  CLI::App* trace = app.add_subcommand("trace", "search for a derivation of a picture");
  trace->add_option("grammar", o.grammar, ".hags file")->required();
  trace->add_option("picture", o.second, ".hpic file")->required();
  add_bounds(trace, o);
  add_format(trace, o);

  CLI::App* compare = app.add_subcommand("compare", "diff two generated languages, or one against an oracle");
  compare->add_option("grammar", o.grammar, ".hags file")->required();
  compare->add_option("other", o.second, "second .hags file");
  compare->add_option("--oracle", o.oracle, "oracle family");
  add_bounds(compare, o);
  add_format(compare, o);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(o, out);
    if (enumerate->parsed()) return cmd_enumerate(o, out);
    if (render->parsed()) return cmd_render(o, out);
    if (trace->parsed()) return cmd_trace(o, out);
    return cmd_compare(o, out);
  } catch (const Failure& f) {
    err << f.message << "\n";
    return f.code;
  }
}

}  // namespace hags
