#pragma once

// Primitive recursive terms.
//
//   z             zero, of whatever arity the context needs
//   s             successor
//   (p i n)       projection onto the i-th of n arguments
//   (comp h g..)  h(g1(x), ..., gq(x))
//   (rec h g)     f(0, x) = h(x); f(y+1, x) = g(y, f(y, x), x)

#include "ordterm/natural.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ordterm {

/// Arities a term accepts: exactly `min`, or every n >= min when `open`.
struct Arity {
  std::size_t min = 0;
  bool open = false;

  bool accepts(std::size_t n) const { return open ? n >= min : n == min; }
  friend bool operator==(const Arity&, const Arity&) = default;
};

class PRTerm {
 public:
  enum class Kind { Zero, Succ, Proj, Comp, Rec };

  static PRTerm zero();
  static PRTerm succ();
  /// 1 <= i <= n, else Error{ArityMismatch}.
  static PRTerm proj(std::size_t i, std::size_t n);
  /// Error{ArityMismatch} when the arities do not fit together.
  static PRTerm comp(PRTerm h, std::vector<PRTerm> gs);
  static PRTerm rec(PRTerm h, PRTerm g);

  Kind kind() const { return kind_; }
  std::size_t index() const { return i_; }
  std::size_t width() const { return n_; }
  /// Comp: h then g1..gq. Rec: h then g.
  const std::vector<PRTerm>& parts() const { return *parts_; }
  const Arity& arity() const { return arity_; }

  std::string to_string() const;
  /// Throws Error{ParseError} or Error{ArityMismatch}.
  static PRTerm parse(std::string_view text);

  friend bool operator==(const PRTerm& a, const PRTerm& b);

 private:
  Kind kind_ = Kind::Zero;
  std::size_t i_ = 0;
  std::size_t n_ = 0;
  std::shared_ptr<const std::vector<PRTerm>> parts_ = std::make_shared<const std::vector<PRTerm>>();
  Arity arity_{0, true};
};

/// Throws Error{ArityMismatch} when the term does not accept |args| arguments.
Natural eval_pr(const PRTerm& t, const std::vector<Natural>& args);

namespace terms {
PRTerm add();    ///< add(y, x) = y + x
PRTerm mult();   ///< mult(y, x) = y * x
PRTerm pred();   ///< pred(y) = y - 1, truncated
PRTerm monus();  ///< monus(y, x) = x - y, truncated
}  // namespace terms

}  // namespace ordterm
