#include "ordterm/prterm.hpp"

#include "ordterm/error.hpp"

#include <algorithm>
#include <cctype>

namespace ordterm {

namespace {

std::optional<Arity> intersect(const Arity& a, const Arity& b) {
  if (a.open && b.open) return Arity{std::max(a.min, b.min), true};
  if (!a.open && !b.open) return a.min == b.min ? std::optional<Arity>(a) : std::nullopt;
  const Arity& fixed = a.open ? b : a;
  const Arity& open = a.open ? a : b;
  return open.accepts(fixed.min) ? std::optional<Arity>(fixed) : std::nullopt;
}

std::string describe(const Arity& a) { return std::to_string(a.min) + (a.open ? "+" : ""); }

}  // namespace

PRTerm PRTerm::zero() { return PRTerm(); }

PRTerm PRTerm::succ() {
  PRTerm t;
  t.kind_ = Kind::Succ;
  t.arity_ = {1, false};
  return t;
}

PRTerm PRTerm::proj(std::size_t i, std::size_t n) {
  if (i < 1 || i > n)
    throw Error(ErrorCode::ArityMismatch, "projection (p " + std::to_string(i) + " " + std::to_string(n) + ")");
  PRTerm t;
  t.kind_ = Kind::Proj;
  t.i_ = i;
  t.n_ = n;
  t.arity_ = {n, false};
  return t;
}

PRTerm PRTerm::comp(PRTerm h, std::vector<PRTerm> gs) {
  if (gs.empty()) throw Error(ErrorCode::ArityMismatch, "comp needs at least one inner term");
  if (!h.arity().accepts(gs.size()))
    throw Error(ErrorCode::ArityMismatch, "outer term of arity " + describe(h.arity()) + " applied to " +
                                              std::to_string(gs.size()) + " inner terms");
  Arity a{0, true};
  for (const auto& g : gs) {
    auto both = intersect(a, g.arity());
    if (!both) throw Error(ErrorCode::ArityMismatch, "inner terms of comp disagree on arity");
    a = *both;
  }
  PRTerm t;
  t.kind_ = Kind::Comp;
  std::vector<PRTerm> parts{std::move(h)};
  parts.insert(parts.end(), std::make_move_iterator(gs.begin()), std::make_move_iterator(gs.end()));
  t.parts_ = std::make_shared<const std::vector<PRTerm>>(std::move(parts));
  t.arity_ = a;
  return t;
}

PRTerm PRTerm::rec(PRTerm h, PRTerm g) {
  // f has arity n + 1 when h has arity n and g has arity n + 2.
  const Arity from_h{h.arity().min + 1, h.arity().open};
  if (!g.arity().open && g.arity().min < 2) throw Error(ErrorCode::ArityMismatch, "rec step term needs arity >= 2");
  const Arity from_g{g.arity().open ? std::max<std::size_t>(g.arity().min, 2) - 1 : g.arity().min - 1,
                     g.arity().open};
  auto a = intersect(from_h, from_g);
  if (!a)
    throw Error(ErrorCode::ArityMismatch,
                "rec base of arity " + describe(h.arity()) + " does not fit step of arity " + describe(g.arity()));
  PRTerm t;
  t.kind_ = Kind::Rec;
  t.parts_ = std::make_shared<const std::vector<PRTerm>>(std::vector<PRTerm>{std::move(h), std::move(g)});
  t.arity_ = *a;
  return t;
}

bool operator==(const PRTerm& a, const PRTerm& b) {
  return a.kind_ == b.kind_ && a.i_ == b.i_ && a.n_ == b.n_ && *a.parts_ == *b.parts_;
}

std::string PRTerm::to_string() const {
  switch (kind_) {
    case Kind::Zero: return "z";
    case Kind::Succ: return "s";
    case Kind::Proj: return "(p " + std::to_string(i_) + " " + std::to_string(n_) + ")";
    case Kind::Comp:
    case Kind::Rec: {
      std::string s = kind_ == Kind::Comp ? "(comp" : "(rec";
      for (const auto& part : *parts_) s += " " + part.to_string();
      return s + ")";
    }
  }
  return {};
}

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  PRTerm parse_all() {
    PRTerm t = term();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  PRTerm term() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] != '(') {
      const std::string w = word();
      if (w == "z") return PRTerm::zero();
      if (w == "s") return PRTerm::succ();
      fail("unknown term '" + w + "'");
    }
    ++pos_;
    const std::string head = word();
    PRTerm t;
    if (head == "p") {
      const std::size_t i = number();
      const std::size_t n = number();
      t = PRTerm::proj(i, n);
    } else if (head == "comp") {
      PRTerm h = term();
      std::vector<PRTerm> gs;
      while (!at_close()) gs.push_back(term());
      t = PRTerm::comp(std::move(h), std::move(gs));
    } else if (head == "rec") {
      PRTerm h = term();
      PRTerm g = term();
      t = PRTerm::rec(std::move(h), std::move(g));
    } else {
      fail("unknown form '" + head + "'");
    }
    if (!at_close()) fail("expected ')'");
    ++pos_;
    return t;
  }

  bool at_close() {
    skip_ws();
    if (pos_ >= text_.size()) fail("missing ')'");
    return text_[pos_] == ')';
  }

  std::string word() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a word");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t number() {
    const std::string w = word();
    if (!std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      fail("expected a number, got '" + w + "'");
    return to_u64(parse_natural(w));
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Natural eval_checked(const PRTerm& t, const std::vector<Natural>& args) {
  switch (t.kind()) {
    case PRTerm::Kind::Zero: return 0;
    case PRTerm::Kind::Succ: return args[0] + 1;
    case PRTerm::Kind::Proj: return args[t.index() - 1];
    case PRTerm::Kind::Comp: {
      const auto& parts = t.parts();
      std::vector<Natural> inner;
      for (std::size_t i = 1; i < parts.size(); ++i) inner.push_back(eval_checked(parts[i], args));
      return eval_checked(parts[0], inner);
    }
    case PRTerm::Kind::Rec: {
      const PRTerm& h = t.parts()[0];
      const PRTerm& g = t.parts()[1];
      const std::vector<Natural> xs(args.begin() + 1, args.end());
      Natural acc = eval_checked(h, xs);
      std::vector<Natural> step_args(args.size() + 1);
      std::copy(xs.begin(), xs.end(), step_args.begin() + 2);
      for (Natural y = 0; y < args[0]; ++y) {
        step_args[0] = y;
        step_args[1] = std::move(acc);
        acc = eval_checked(g, step_args);
      }
      return acc;
    }
  }
  return 0;
}

}  // namespace

PRTerm PRTerm::parse(std::string_view text) { return TermParser(text).parse_all(); }

Natural eval_pr(const PRTerm& t, const std::vector<Natural>& args) {
  if (!t.arity().accepts(args.size()))
    throw Error(ErrorCode::ArityMismatch, "term of arity " + describe(t.arity()) + " applied to " +
                                              std::to_string(args.size()) + " arguments");
  return eval_checked(t, args);
}

namespace terms {

PRTerm add() { return PRTerm::rec(PRTerm::proj(1, 1), PRTerm::comp(PRTerm::succ(), {PRTerm::proj(2, 3)})); }

PRTerm mult() {
  return PRTerm::rec(PRTerm::zero(), PRTerm::comp(add(), {PRTerm::proj(2, 3), PRTerm::proj(3, 3)}));
}

PRTerm pred() { return PRTerm::rec(PRTerm::zero(), PRTerm::proj(1, 2)); }

PRTerm monus() { return PRTerm::rec(PRTerm::proj(1, 1), PRTerm::comp(pred(), {PRTerm::proj(2, 3)})); }

}  // namespace terms

}  // namespace ordterm
