#include "ordterm/cli.hpp"

#include "ordterm/bounds.hpp"
#include "ordterm/erdos.hpp"
#include "ordterm/error.hpp"
#include "ordterm/json_natural.hpp"
#include "ordterm/ktree.hpp"
#include "ordterm/prcompile.hpp"
#include "ordterm/theorem.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace ordterm::cli {

// ---------------------------------------------------------------------------
// Ordinal expressions

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  Ordinal parse_all() {
    Ordinal r = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return r;
  }

 private:
  Ordinal expr() {
    Ordinal r = prod();
    while (peek_is("#") && !peek_is("#*")) {
      pos_ += 1;
      r = nat_sum(r, prod());
    }
    return r;
  }

  Ordinal prod() {
    Ordinal r = sum();
    while (peek_is("#*")) {
      pos_ += 2;
      r = nat_prod_nat(r, natural());
    }
    return r;
  }

  Ordinal sum() {
    Ordinal r = unary();
    while (peek_is("+")) {
      pos_ += 1;
      r = add(r, unary());
    }
    return r;
  }

  Ordinal unary() {
    if (peek_is("exp(")) {
      pos_ += 4;
      const Natural k = natural();
      expect(',');
      Ordinal a = expr();
      expect(')');
      return exp_base_k(k, a);
    }
    if (peek_is("(")) {
      pos_ += 1;
      Ordinal r = expr();
      expect(')');
      return r;
    }
    if (peek_is("w")) {
      pos_ += 1;
      Ordinal exponent(1);
      if (peek_is("^(")) {
        pos_ += 2;
        exponent = expr();
        expect(')');
      } else if (peek_is("^")) {
        pos_ += 1;
        exponent = Ordinal(natural());
      }
      Natural coefficient = 1;
      if (peek_is("*") && !peek_is("*(")) {
        pos_ += 1;
        coefficient = natural();
      }
      return Ordinal::omega_power(exponent, coefficient);
    }
    return Ordinal(natural());
  }

  Natural natural() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Natural(std::string(text_.substr(start, pos_ - start)));
  }

  bool peek_is(std::string_view token) {
    skip_ws();
    return text_.substr(pos_, token.size()) == token;
  }
  void expect(char c) {
    if (!peek_is(std::string_view(&c, 1))) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal eval_ordinal_expr(std::string_view text) { return ExprParser(text).parse_all(); }

// ---------------------------------------------------------------------------

namespace {

struct Config {
  std::size_t k = 0;
  std::size_t max_steps = kDefaultMaxSteps;
  std::string max_bound = std::to_string(kDefaultMaxBound);
  std::string format = "human";
  std::string invariant_file;

  bool structured() const { return format == "structured"; }
  BoundOptions bound_options() const {
    BoundOptions o;
    o.max_explicit = parse_natural(max_bound);
    return o;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json(const std::string& path_or_text) {
  const bool inline_text = !path_or_text.empty() && (path_or_text[0] == '[' || path_or_text[0] == '{');
  const std::string text = inline_text ? path_or_text : read_file(path_or_text);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

/// A term file, or the DSL text itself.
PRTerm load_term(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return PRTerm::parse(read_file(arg));
  return PRTerm::parse(arg);
}

std::vector<Natural> parse_inputs(const std::vector<std::string>& raw) {
  std::vector<Natural> out;
  for (const auto& r : raw) out.push_back(parse_natural(r));
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

std::string tuple_text(const std::vector<Natural>& v) {
  std::vector<std::string> parts;
  for (const auto& x : v) parts.push_back(x.str());
  return "(" + join(parts, ",") + ")";
}

nlohmann::json tuple_json(const std::vector<Natural>& v) {
  auto j = nlohmann::json::array();
  for (const auto& x : v) j.push_back(natural_to_json(x));
  return j;
}

void emit(std::ostream& out, const nlohmann::json& doc) { out << doc.dump(2) << "\n"; }

std::string relation_text(const RankedRelation& r) {
  auto locs = [](const LocationSet& s) {
    if (s.any) return std::string("*");
    std::vector<std::string> parts;
    for (const auto& [lo, hi] : s.intervals) parts.push_back(std::to_string(lo) + ".." + std::to_string(hi));
    return join(parts, ",");
  };
  std::vector<std::string> atoms;
  for (const auto& a : r.atoms) atoms.push_back(a.to_string());
  return r.name + "  pre " + locs(r.pre) + "  post " + locs(r.post) + "  [" + join(atoms, ", ") + "]  rank " +
         r.rank.to_string();
}

void print_violations(std::ostream& out, const CheckReport& report) {
  for (const auto& v : report.violations) {
    out << "  " << to_string(v.kind) << " (" << v.i << ", " << v.j << ") locations " << v.earlier.location << " -> "
        << v.later.location;
    if (v.kind == ViolationKind::RankNotDecreasing)
      out << " relation " << v.relation << " rank " << v.rank_before << " -> " << v.rank_after;
    out << "\n";
  }
  if (report.violation_count > report.violations.size())
    out << "  ... " << report.violation_count - report.violations.size() << " more\n";
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_ord(const Config& cfg, const std::vector<std::string>& words, std::ostream& out) {
  const Ordinal r = eval_ordinal_expr(join(words, " "));
  if (cfg.structured())
    emit(out, {{"ordinal", r.to_string()}});
  else
    out << r.to_string() << "\n";
  return kPass;
}

int cmd_tree_height(const Config& cfg, const std::string& alpha_text, const std::string& tree_text,
                    std::ostream& out) {
  const std::size_t k = cfg.k == 0 ? 2 : cfg.k;
  const Ordinal alpha = Ordinal::parse(alpha_text);
  Ordinal h;
  if (tree_text.empty()) {
    h = height_nil(k, alpha);
  } else {
    const LabelledTree t = LabelledTree::parse(tree_text, k);
    if (!is_valid(t, alpha)) throw Error(ErrorCode::InvalidArgument, "tree is not in " + std::to_string(k) + "-Tr(" + alpha.to_string() + ")");
    h = height_tree(t, k, alpha);
  }
  if (cfg.structured())
    emit(out, {{"k", k}, {"alpha", alpha.to_string()}, {"height", h.to_string()}});
  else
    out << h.to_string() << "\n";
  return kPass;
}

int cmd_embed(const Config& cfg, const std::string& source, std::ostream& out) {
  const nlohmann::json j = read_json(source);
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected a list of points");
  std::size_t k = cfg.k;
  if (k == 0) {
    if (j.empty() || !j[0].is_array()) throw Error(ErrorCode::ParseError, "cannot infer k; pass --k");
    k = j[0].size();
  }
  std::vector<Point> s;
  for (const auto& p : j) s.push_back(point_from_json(p, k));
  const ErdosTree t = embed(s, k);
  const LabelledTree labelled = to_labelled_tree(t, k);
  std::optional<Ordinal> f;
  if (!s.empty()) f = f_star(s, k);
  if (cfg.structured()) {
    nlohmann::json doc = {{"k", k}, {"tree", to_json(t)}, {"labelled_tree", labelled.to_string()}};
    doc["f_star"] = f ? nlohmann::json(f->to_string()) : nlohmann::json(nullptr);
    doc["f_star_vec"] = f ? tuple_json(to_vector(*f, k)) : nlohmann::json(nullptr);
    emit(out, doc);
  } else {
    for (const auto& b : t.branches()) {
      std::vector<std::string> pts;
      for (const auto& p : b.elements) pts.push_back(p.to_string());
      std::vector<std::string> cols;
      for (auto c : b.colors) cols.push_back(std::to_string(c));
      out << "branch <" << join(pts, " ") << "> colors <" << join(cols, " ") << ">\n";
    }
    out << "labelled " << labelled.to_string() << "\n";
    if (f) out << "f* " << f->to_string() << " " << tuple_text(to_vector(*f, k)) << "\n";
  }
  return kPass;
}

int cmd_bound(const Config& cfg, const std::string& source, const std::string& n_text, std::ostream& out) {
  const nlohmann::json j = read_json(source);
  if (!j.is_object() || !j.contains("k") || !j.contains("values") || !j.at("k").is_number_unsigned())
    throw Error(ErrorCode::ParseError, "bound input is {\"k\": K, \"values\": [[...], ...]}");
  const auto k = j.at("k").get<std::size_t>();
  if (cfg.k != 0 && cfg.k != k) throw Error(ErrorCode::InvalidArgument, "--k disagrees with the input's k");
  std::vector<Tuple> values;
  for (const auto& v : j.at("values")) {
    if (!v.is_array()) throw Error(ErrorCode::ParseError, "each value is a list of naturals");
    Tuple t;
    for (const auto& c : v) t.push_back(natural_from_json(c));
    values.push_back(std::move(t));
  }
  const SequenceFn sigma = sequence_from_values(k, std::move(values));
  const Natural n = parse_natural(n_text);
  const BoundOptions opts = cfg.bound_options();
  const Natural g = bound_g(sigma, n, opts);
  const Natural m = find_nondescent(sigma, n, opts);
  if (cfg.structured())
    emit(out, {{"k", k}, {"n", natural_to_json(n)}, {"bound", natural_to_json(g)}, {"witness", natural_to_json(m)}});
  else
    out << "g(" << n << ") = " << g << "\nwitness " << m << "\n";
  return kPass;
}

CompiledUnit compile_for(const PRTerm& term, std::size_t inputs) { return compile(term, inputs); }

TransitionInvariant chosen_invariant(const Config& cfg, const CompiledUnit& unit) {
  if (cfg.invariant_file.empty()) return unit.invariant;
  return invariant_from_json(read_json(cfg.invariant_file));
}

int cmd_compile(const Config& cfg, const std::string& term_arg, std::size_t arity, std::ostream& out) {
  const PRTerm term = load_term(term_arg);
  const CompiledUnit unit = arity == 0 && term.arity().min != 0 ? compile(term) : compile(term, arity);
  if (cfg.structured()) {
    emit(out, to_json(unit));
  } else {
    out << "# inputs " << join(unit.input_vars, " ") << "; result " << unit.result_var << "\n";
    out << unit.program.to_text();
    out << "# invariant (" << unit.invariant.k() << " relations)\n";
    for (const auto& r : unit.invariant.relations) out << "#   " << relation_text(r) << "\n";
  }
  return kPass;
}

int cmd_run(const Config& cfg, const std::string& term_arg, const std::vector<std::string>& raw, std::ostream& out,
            std::ostream& err) {
  const PRTerm term = load_term(term_arg);
  const auto args = parse_inputs(raw);
  const CompiledUnit unit = compile_for(term, args.size());
  const Trace trace = run_trace(unit.program, input_state(unit, args), cfg.max_steps);
  if (cfg.structured()) {
    nlohmann::json doc = {{"terminated", trace.terminated}, {"steps", trace.steps()}};
    doc["result"] = trace.terminated ? natural_to_json(result_of(unit, trace.states.back())) : nullptr;
    doc["trace"] = to_json(unit.program, trace);
    emit(out, doc);
  } else if (trace.terminated) {
    out << "result " << result_of(unit, trace.states.back()) << "\nsteps " << trace.steps() << "\n";
  }
  if (!trace.terminated) {
    err << "error: no final state within " << cfg.max_steps << " steps\n";
    return kBudget;
  }
  return kPass;
}

int cmd_check(const Config& cfg, const std::string& term_arg, const std::vector<std::string>& raw, std::ostream& out,
              std::ostream& err) {
  const PRTerm term = load_term(term_arg);
  const auto args = parse_inputs(raw);
  const CompiledUnit unit = compile_for(term, args.size());
  const TransitionInvariant inv = chosen_invariant(cfg, unit);
  const CheckReport report = check_invariant(unit.program, input_state(unit, args), inv, cfg.max_steps);
  if (cfg.structured()) {
    emit(out, to_json(unit.program, report));
  } else {
    out << (report.passed() ? "invariant holds" : "invariant violated") << " on " << report.pairs_checked
        << " pairs of a trace of length " << report.trace_length << "\n";
    print_violations(out, report);
  }
  if (!report.trace_terminated) {
    err << "error: no final state within " << cfg.max_steps << " steps\n";
    return report.passed() ? kBudget : kViolation;
  }
  return report.passed() ? kPass : kViolation;
}

int cmd_pipeline(const Config& cfg, const std::string& term_arg, const std::vector<std::string>& raw,
                 std::ostream& out, std::ostream& err) {
  const PRTerm term = load_term(term_arg);
  const auto args = parse_inputs(raw);
  const CompiledUnit unit = compile_for(term, args.size());
  const TransitionInvariant inv = chosen_invariant(cfg, unit);
  const State s0 = input_state(unit, args);
  const Trace trace = run_trace(unit.program, s0, cfg.max_steps);
  if (!trace.terminated) {
    err << "error: no final state within " << cfg.max_steps << " steps\n";
    return kBudget;
  }
  const Natural oracle = eval_pr(term, args);
  const Natural result = result_of(unit, trace.states.back());
  const CheckReport report = check_invariant(unit.program, trace, inv);

  std::optional<Natural> bound;
  std::string bound_error;
  int budget_failure = kPass;
  if (report.passed()) {
    try {
      bound = step_bound(unit.program, s0, inv, cfg.max_steps, cfg.bound_options());
    } catch (const Error& e) {
      bound_error = e.what();
      budget_failure = e.code() == ErrorCode::BudgetExceeded ? kBudget : kViolation;
    }
  }
  const bool result_ok = result == oracle;
  const bool bound_ok = bound && Natural(trace.steps()) <= *bound;
  const bool passed = result_ok && report.passed() && bound_ok;

  if (cfg.structured()) {
    nlohmann::json doc = {{"term", term.to_string()},
                          {"inputs", tuple_json(args)},
                          {"result", natural_to_json(result)},
                          {"oracle", natural_to_json(oracle)},
                          {"result_matches", result_ok},
                          {"invariant", to_json(unit.program, report)},
                          {"trace_length", trace.states.size()},
                          {"termination_step", trace.steps()}};
    doc["step_bound"] = bound ? natural_to_json(*bound) : nullptr;
    doc["bound_holds"] = bound_ok;
    if (!bound_error.empty()) doc["bound_error"] = bound_error;
    doc["passed"] = passed;
    emit(out, doc);
  } else {
    out << "term " << term.to_string() << "\n";
    out << "result " << result << " oracle " << oracle << (result_ok ? " (match)" : " (MISMATCH)") << "\n";
    out << "invariant " << (report.passed() ? "pass" : "FAIL") << " (" << inv.k() << " relations, "
        << report.pairs_checked << " pairs, " << report.violation_count << " violations)\n";
    print_violations(out, report);
    out << "trace length " << trace.states.size() << ", termination step " << trace.steps() << "\n";
    if (bound)
      out << "step bound " << *bound << (bound_ok ? " (holds)" : " (VIOLATED)") << "\n";
    else if (!bound_error.empty())
      out << "step bound unavailable: " << bound_error << "\n";
  }
  if (passed) return kPass;
  if (result_ok && report.passed() && budget_failure == kBudget) return kBudget;
  return kViolation;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::BudgetExceeded: return kBudget;
    case ErrorCode::LemmaViolated:
    case ErrorCode::LabelNotDecreasing: return kViolation;
    default: return kUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Ordinal height bounds for termination analysis", "ordterm"};
  app.require_subcommand(1);
  app.add_option("--k", cfg.k, "Arity / number of relations")->check(CLI::PositiveNumber);
  app.add_option("--max-steps", cfg.max_steps, "Interpreter step budget")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--max-bound", cfg.max_bound, "Ceiling on step-by-step bound evaluation")->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"human", "structured"}))->capture_default_str();
  app.add_option("--invariant", cfg.invariant_file, "Invariant JSON replacing the compiled one");

  std::vector<std::string> words;
  auto* ord = app.add_subcommand("ord", "Evaluate an ordinal expression");
  ord->add_option("expr", words, "Expression, e.g. 'w # 1' or 'exp(2, w*2)'")->required();

  std::string alpha, tree;
  auto* th = app.add_subcommand("tree-height", "Height of the empty tree (or --tree) in k-Tr(alpha)");
  th->add_option("alpha", alpha)->required();
  th->add_option("--tree", tree, "Tree in (label child ...) form");

  std::string source;
  auto* em = app.add_subcommand("embed", "Erdős tree and f* of a homogeneous sequence");
  em->add_option("points", source, "JSON list of points, inline or a file")->required();

  std::string n_text = "0";
  auto* bd = app.add_subcommand("bound", "Bound g(n) and the first non-descent of a sequence");
  bd->add_option("file", source, "JSON {\"k\", \"values\"}; the last value repeats")->required();
  bd->add_option("--n", n_text)->capture_default_str();

  std::string term_arg;
  std::size_t arity = 0;
  std::vector<std::string> inputs;
  auto* co = app.add_subcommand("compile", "Compile a term to a program and invariant");
  co->add_option("term", term_arg, "Term file or DSL text")->required();
  co->add_option("--arity", arity, "Arity to compile at");

  auto* ru = app.add_subcommand("run", "Compile and run on inputs");
  auto* ch = app.add_subcommand("check", "Check the invariant on the trace from inputs");
  auto* pi = app.add_subcommand("pipeline", "Compile, run, check and bound");
  for (auto* sub : {ru, ch, pi}) {
    sub->add_option("term", term_arg, "Term file or DSL text")->required();
    sub->add_option("inputs", inputs, "Natural inputs");
  }
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*ord) return cmd_ord(cfg, words, out);
    if (*th) return cmd_tree_height(cfg, alpha, tree, out);
    if (*em) return cmd_embed(cfg, source, out);
    if (*bd) return cmd_bound(cfg, source, n_text, out);
    if (*co) return cmd_compile(cfg, term_arg, arity, out);
    if (*ru) return cmd_run(cfg, term_arg, inputs, out, err);
    if (*ch) return cmd_check(cfg, term_arg, inputs, out, err);
    if (*pi) return cmd_pipeline(cfg, term_arg, inputs, out, err);
  } catch (const Error& e) {
    if (cfg.structured()) emit(out, {{"error", {{"code", to_string(e.code())}, {"message", e.what()}}}});
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kUsage;
}

}  // namespace ordterm::cli
