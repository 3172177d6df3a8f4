#pragma once

// Ordinals below epsilon_0 in hereditary Cantor normal form.
//
// An ordinal is the list of terms w^e1*c1 + ... + w^en*cn with e1 > ... > en
// and every ci >= 1; the empty list is 0. Exponents are ordinals themselves.
// Every value produced by this module is canonical, so structural equality is
// ordinal equality.

#include "ordterm/natural.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ordterm {

struct OrdinalTerm;

class Ordinal {
 public:
  /// Zero.
  Ordinal() = default;
  Ordinal(std::uint64_t n);  // NOLINT: finite ordinals convert implicitly
  explicit Ordinal(const Natural& n);

  static Ordinal omega();
  /// w^exponent * coefficient; a zero coefficient yields 0.
  static Ordinal omega_power(const Ordinal& exponent, const Natural& coefficient = 1);
  /// Validates canonical form; throws Error{InvalidArgument}.
  static Ordinal from_terms(std::vector<OrdinalTerm> terms);

  const std::vector<OrdinalTerm>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  bool is_successor() const;
  /// Non-zero with no finite part.
  bool is_limit() const;

  /// The n in lambda + n, lambda zero or limit.
  Natural finite_part() const;
  /// The lambda in lambda + n.
  Ordinal limit_part() const;
  /// Value of a finite ordinal; throws Error{DomainTooLarge} if infinite.
  Natural as_natural() const;

  std::string to_string() const;
  /// Canonical textual grammar:
  ///   ordinal := term ("+" term)* ; term := "w" ("^" "(" ordinal ")" | "^" nat)? ("*" nat)? | nat
  /// Rejects non-decreasing exponents and zero coefficients.
  static Ordinal parse(std::string_view text);

  friend bool operator==(const Ordinal& a, const Ordinal& b);
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<OrdinalTerm> terms_;
};

struct OrdinalTerm {
  Ordinal exponent;
  Natural coefficient;

  friend bool operator==(const OrdinalTerm&, const OrdinalTerm&) = default;
};

std::strong_ordering cmp(const Ordinal& a, const Ordinal& b);

/// Standard (non-commutative) ordinal sum.
Ordinal add(const Ordinal& a, const Ordinal& b);

/// Natural (Hessenberg) sum: coefficient-wise over the merged exponents.
Ordinal nat_sum(const Ordinal& a, const Ordinal& b);

/// a # a # ... # a, k times.
Ordinal nat_prod_nat(const Ordinal& a, const Natural& k);

/// k^a for k >= 2.
Ordinal exp_base_k(const Natural& k, const Ordinal& a);

/// Coefficients (c_{k-1}, ..., c_0) of an ordinal below w^k.
/// Throws Error{DomainTooLarge} when a >= w^k.
std::vector<Natural> to_vector(const Ordinal& a, std::size_t k);

/// Inverse of to_vector.
Ordinal from_vector(const std::vector<Natural>& coefficients);

}  // namespace ordterm
