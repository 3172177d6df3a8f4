#include "ordterm/ordinal.hpp"

#include "ordterm/error.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace ordterm {

// ---------------------------------------------------------------------------
// Natural helpers and error names live here; they are tiny and shared.

Natural pow_nat(const Natural& base, const Natural& exponent) {
  if (exponent > std::numeric_limits<unsigned>::max()) {
    if (base <= 1) return base == 0 ? Natural(0) : Natural(1);
    throw Error(ErrorCode::DomainTooLarge, "exponent " + to_string(exponent) + " too large");
  }
  return boost::multiprecision::pow(base, exponent.convert_to<unsigned>());
}

std::uint64_t to_u64(const Natural& n) {
  if (n < 0 || n > std::numeric_limits<std::uint64_t>::max())
    throw Error(ErrorCode::InvalidArgument, "value " + to_string(n) + " does not fit in 64 bits");
  return n.convert_to<std::uint64_t>();
}

std::string to_string(const Natural& n) { return n.str(); }

Natural parse_natural(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::ParseError, "expected a natural number");
  for (char c : text)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw Error(ErrorCode::ParseError, "invalid natural '" + std::string(text) + "'");
  return Natural(std::string(text));
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DomainTooLarge: return "DomainTooLarge";
    case ErrorCode::OccupiedSlot: return "OccupiedSlot";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::LabelNotDecreasing: return "LabelNotDecreasing";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NoRelation: return "NoRelation";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::BranchNotInTree: return "BranchNotInTree";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::LemmaViolated: return "LemmaViolated";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::NameCollision: return "NameCollision";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------

Ordinal::Ordinal(std::uint64_t n) {
  if (n != 0) terms_.push_back({Ordinal(), Natural(n)});
}

Ordinal::Ordinal(const Natural& n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative ordinal");
  if (n != 0) terms_.push_back({Ordinal(), n});
}

Ordinal Ordinal::omega() { return omega_power(Ordinal(1)); }

Ordinal Ordinal::omega_power(const Ordinal& exponent, const Natural& coefficient) {
  Ordinal r;
  if (coefficient != 0) r.terms_.push_back({exponent, coefficient});
  return r;
}

Ordinal Ordinal::from_terms(std::vector<OrdinalTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient <= 0)
      throw Error(ErrorCode::InvalidArgument, "coefficients must be positive");
    if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent))
      throw Error(ErrorCode::InvalidArgument, "exponents must be strictly decreasing");
  }
  Ordinal r;
  r.terms_ = std::move(terms);
  return r;
}

bool Ordinal::is_finite() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero()); }

bool Ordinal::is_successor() const { return !terms_.empty() && terms_.back().exponent.is_zero(); }

bool Ordinal::is_limit() const { return !terms_.empty() && !terms_.back().exponent.is_zero(); }

Natural Ordinal::finite_part() const { return is_successor() ? terms_.back().coefficient : Natural(0); }

Ordinal Ordinal::limit_part() const {
  Ordinal r = *this;
  if (r.is_successor()) r.terms_.pop_back();
  return r;
}

Natural Ordinal::as_natural() const {
  if (!is_finite()) throw Error(ErrorCode::DomainTooLarge, to_string() + " is not finite");
  return finite_part();
}

bool operator==(const Ordinal& a, const Ordinal& b) { return a.terms_ == b.terms_; }

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.terms_[i];
    const auto& y = b.terms_[i];
    if (auto c = x.exponent <=> y.exponent; c != 0) return c;
    if (x.coefficient != y.coefficient)
      return x.coefficient < y.coefficient ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.terms_.size() <=> b.terms_.size();
}

std::strong_ordering cmp(const Ordinal& a, const Ordinal& b) { return a <=> b; }

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const Ordinal& lead = b.terms().front().exponent;
  std::vector<OrdinalTerm> out;
  for (const auto& t : a.terms()) {
    if (t.exponent < lead) break;
    out.push_back(t);
  }
  auto rest = b.terms().begin();
  if (!out.empty() && out.back().exponent == lead) {
    out.back().coefficient += rest->coefficient;
    ++rest;
  }
  out.insert(out.end(), rest, b.terms().end());
  return Ordinal::from_terms(std::move(out));
}

Ordinal nat_sum(const Ordinal& a, const Ordinal& b) {
  std::vector<OrdinalTerm> out;
  auto i = a.terms().begin();
  auto j = b.terms().begin();
  while (i != a.terms().end() || j != b.terms().end()) {
    if (j == b.terms().end() || (i != a.terms().end() && i->exponent > j->exponent)) {
      out.push_back(*i++);
    } else if (i == a.terms().end() || j->exponent > i->exponent) {
      out.push_back(*j++);
    } else {
      out.push_back({i->exponent, i->coefficient + j->coefficient});
      ++i;
      ++j;
    }
  }
  return Ordinal::from_terms(std::move(out));
}

Ordinal nat_prod_nat(const Ordinal& a, const Natural& k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative multiplier");
  if (k == 0) return Ordinal();
  std::vector<OrdinalTerm> out = a.terms();
  for (auto& t : out) t.coefficient *= k;
  return Ordinal::from_terms(std::move(out));
}

Ordinal exp_base_k(const Natural& k, const Ordinal& a) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "exp_base_k needs k >= 2");
  const Natural n = a.finite_part();
  const Natural kn = pow_nat(k, n);
  const Ordinal lambda = a.limit_part();
  if (lambda.is_zero()) return Ordinal(kn);
  // k^lambda = w^(lambda / w): finite exponents drop by one, infinite ones are fixed.
  std::vector<OrdinalTerm> shifted;
  for (const auto& t : lambda.terms()) {
    Ordinal e = t.exponent.is_finite() ? Ordinal(t.exponent.as_natural() - 1) : t.exponent;
    shifted.push_back({std::move(e), t.coefficient});
  }
  return Ordinal::omega_power(Ordinal::from_terms(std::move(shifted)), kn);
}

std::vector<Natural> to_vector(const Ordinal& a, std::size_t k) {
  std::vector<Natural> out(k, 0);
  for (const auto& t : a.terms()) {
    if (!t.exponent.is_finite() || t.exponent.as_natural() >= k)
      throw Error(ErrorCode::DomainTooLarge, a.to_string() + " is not below w^" + std::to_string(k));
    const auto e = t.exponent.as_natural().convert_to<std::size_t>();
    out[k - 1 - e] = t.coefficient;
  }
  return out;
}

Ordinal from_vector(const std::vector<Natural>& coefficients) {
  std::vector<OrdinalTerm> out;
  const std::size_t k = coefficients.size();
  for (std::size_t i = 0; i < k; ++i)
    if (coefficients[i] != 0) out.push_back({Ordinal(static_cast<std::uint64_t>(k - 1 - i)), coefficients[i]});
  return Ordinal::from_terms(std::move(out));
}

// ---------------------------------------------------------------------------
// Text form

std::string Ordinal::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& t : terms_) {
    if (!s.empty()) s += '+';
    if (t.exponent.is_zero()) {
      s += t.coefficient.str();
      continue;
    }
    s += 'w';
    if (t.exponent.is_finite()) {
      if (t.exponent != Ordinal(1)) s += '^' + t.exponent.as_natural().str();
    } else {
      s += "^(" + t.exponent.to_string() + ')';
    }
    if (t.coefficient != 1) s += '*' + t.coefficient.str();
  }
  return s;
}

namespace {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view text) : text_(text) {}

  Ordinal parse_all() {
    Ordinal r = ordinal();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return r;
  }

 private:
  Ordinal ordinal() {
    std::vector<OrdinalTerm> terms;
    std::size_t count = 0;
    bool saw_zero = false;
    do {
      OrdinalTerm t = term();
      ++count;
      if (t.coefficient == 0) {
        saw_zero = true;
        continue;
      }
      if (!terms.empty() && !(t.exponent < terms.back().exponent)) fail("exponents must strictly decrease");
      terms.push_back(std::move(t));
    } while (accept('+'));
    if (saw_zero && count > 1) fail("zero coefficient in a sum");
    return Ordinal::from_terms(std::move(terms));
  }

  OrdinalTerm term() {
    skip_ws();
    if (accept('w')) {
      Ordinal exponent(1);
      if (accept('^')) {
        if (accept('(')) {
          exponent = ordinal();
          expect(')');
        } else {
          exponent = Ordinal(natural());
        }
      }
      Natural coefficient = 1;
      if (accept('*')) {
        coefficient = natural();
        if (coefficient == 0) fail("zero coefficient");
      }
      return {exponent, coefficient};
    }
    return {Ordinal(), natural()};
  }

  Natural natural() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Natural(std::string(text_.substr(start, pos_ - start)));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal Ordinal::parse(std::string_view text) { return OrdinalParser(text).parse_all(); }

}  // namespace ordterm
