#include "ordterm/bounds.hpp"

#include "ordterm/error.hpp"

#include <map>

namespace ordterm {

Tuple SequenceFn::operator()(const Natural& n) const {
  Tuple v = eval(n);
  if (v.size() != k)
    throw Error(ErrorCode::LengthMismatch,
                "sequence value has " + std::to_string(v.size()) + " components, expected " + std::to_string(k));
  return v;
}

SequenceFn constant_sequence(Tuple value) {
  const std::size_t k = value.size();
  return {k, [value = std::move(value)](const Natural&) { return value; }, Natural(0)};
}

SequenceFn sequence_from_values(std::size_t k, std::vector<Tuple> values) {
  if (values.empty()) throw Error(ErrorCode::EmptySequence, "no values given");
  for (const auto& v : values)
    if (v.size() != k) throw Error(ErrorCode::LengthMismatch, "every value needs " + std::to_string(k) + " components");
  const Natural last = values.size() - 1;
  return {k,
          [values = std::move(values)](const Natural& n) {
            return n >= values.size() ? values.back() : values[n.convert_to<std::size_t>()];
          },
          last};
}

bool lex_le(const Tuple& u, const Tuple& v) {
  if (u.size() != v.size()) throw Error(ErrorCode::LengthMismatch, "tuples of different length");
  return !(v < u);
}

Natural find_adjacent_increase(const std::function<Natural(const Natural&)>& sigma1, const Natural& m,
                               const Natural& n) {
  if (!(m < n)) throw Error(ErrorCode::NoWitness, "needs m < n");
  Natural prev = sigma1(m);
  if (!(prev < sigma1(n))) throw Error(ErrorCode::NoWitness, "needs sigma1(m) < sigma1(n)");
  for (Natural p = m; p < n; ++p) {
    Natural next = sigma1(p + 1);
    if (prev < next) return p;
    prev = std::move(next);
  }
  throw Error(ErrorCode::NoWitness, "no adjacent increase");  // unreachable when sigma1 is deterministic
}

namespace {

class BoundEvaluator {
 public:
  BoundEvaluator(const SequenceFn& sigma, const BoundOptions& opts) : sigma_(sigma), opts_(opts), memo_(sigma.k) {
    if (sigma.k == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
    if (sigma.constant_from) {
      // Past T every level is a translation x -> x + shift[j].
      const Tuple c = sigma(*sigma.constant_from);
      shift_.resize(sigma.k);
      shift_[sigma.k - 1] = c[sigma.k - 1] + 1;
      for (std::size_t j = sigma.k - 1; j-- > 0;) shift_[j] = (c[j] + 2) * (1 + shift_[j + 1]);
    }
  }

  /// Bound for the components (sigma_{j+1}, ..., sigma_k), evaluated at x.
  Natural g(std::size_t j, const Natural& x) {
    if (sigma_.constant_from && x >= *sigma_.constant_from) return x + shift_[j];
    if (auto it = memo_[j].find(x); it != memo_[j].end()) return it->second;
    if (x > opts_.max_explicit)
      throw Error(ErrorCode::BudgetExceeded, "bound recursion reached " + x.str() + ", ceiling is " +
                                                 opts_.max_explicit.str());
    const Tuple& v = value(x);
    Natural result;
    if (j + 1 == sigma_.k) {
      result = x + v[j] + 1;
    } else {
      Natural h = x;
      const Natural rounds = v[j] + 2;
      for (Natural i = 0; i < rounds; ++i) {
        if (sigma_.constant_from && h + 1 >= *sigma_.constant_from) {
          h += (rounds - i) * (1 + shift_[j + 1]);
          break;
        }
        h = g(j + 1, h + 1);
      }
      result = std::move(h);
    }
    memo_[j].emplace(x, result);
    return result;
  }

  const Tuple& value(const Natural& x) {
    auto it = values_.find(x);
    if (it == values_.end()) it = values_.emplace(x, sigma_(x)).first;
    return it->second;
  }

 private:
  const SequenceFn& sigma_;
  const BoundOptions& opts_;
  std::vector<std::map<Natural, Natural>> memo_;
  std::map<Natural, Tuple> values_;
  std::vector<Natural> shift_;
};

}  // namespace

Natural bound_g(const SequenceFn& sigma, const Natural& n, const BoundOptions& opts) {
  return BoundEvaluator(sigma, opts).g(0, n);
}

Natural find_nondescent(const SequenceFn& sigma, const Natural& n, const BoundOptions& opts) {
  BoundEvaluator eval(sigma, opts);
  const Natural bound = eval.g(0, n);
  for (Natural m = n; m <= bound; ++m) {
    if (sigma.constant_from && m >= *sigma.constant_from) return m;
    if (m + 1 > opts.max_explicit)
      throw Error(ErrorCode::BudgetExceeded, "witness search reached " + m.str() + ", ceiling is " +
                                                 opts.max_explicit.str());
    if (lex_le(eval.value(m), eval.value(m + 1))) return m;
  }
  throw Error(ErrorCode::LemmaViolated,
              "no non-descent in [" + n.str() + ", " + bound.str() + "]");
}

}  // namespace ordterm
