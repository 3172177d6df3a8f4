// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "ordterm/bounds.hpp"
#include "ordterm/erdos.hpp"
#include "ordterm/error.hpp"
#include "ordterm/ktree.hpp"
#include "ordterm/prcompile.hpp"
#include "ordterm/theorem.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace ordterm;

namespace {

constexpr double kTreeSeconds = 60.0;
constexpr double kCompilerSeconds = 60.0;
constexpr std::size_t kAlgebraSamples = 240;
constexpr std::size_t kErdosSequences = 240;
constexpr std::size_t kBoundCorpusMin = 20;
constexpr std::uint64_t kBoundCeiling = 1'000'000'000;
constexpr std::uint64_t kInputTop = 5;
constexpr std::uint64_t kSeed = 20261017;

struct Result {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << why;
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::vector<Natural>> all_inputs(std::size_t arity, std::uint64_t top) {
  std::vector<std::vector<Natural>> out{{}};
  for (std::size_t i = 0; i < arity; ++i) {
    std::vector<std::vector<Natural>> next;
    for (const auto& prefix : out)
      for (std::uint64_t v = 0; v <= top; ++v) {
        auto row = prefix;
        row.push_back(v);
        next.push_back(std::move(row));
      }
    out = std::move(next);
  }
  return out;
}

Ordinal random_below_w4(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(0, 5);
  std::vector<Natural> v(4);
  for (auto& c : v) c = coef(rng);
  return from_vector(v);
}

// Hereditary sample: exponents may themselves be infinite.
Ordinal random_ordinal(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> terms(0, 3), coef(1, 9), kind(0, 2);
  std::vector<Ordinal> exps;
  const int n = terms(rng);
  for (int i = 0; i < n; ++i)
    exps.push_back(depth > 0 && kind(rng) == 0 ? random_ordinal(rng, depth - 1) : Ordinal(std::uint64_t(kind(rng) + i)));
  std::sort(exps.begin(), exps.end(), std::greater<>());
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
  Ordinal a;
  for (const auto& e : exps) a = add(a, Ordinal::omega_power(e, coef(rng)));
  return a;
}

std::vector<Point> random_homogeneous(std::mt19937_64& rng, std::size_t k) {
  std::uniform_int_distribution<std::uint64_t> coord(0, 8);
  const std::size_t len = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
  std::vector<Point> s;
  for (int attempt = 0; attempt < 400 && s.size() < len; ++attempt) {
    Point y;
    for (std::size_t h = 0; h < k; ++h) y.coords.push_back(coord(rng));
    auto extended = s;
    extended.push_back(y);
    if (is_homogeneous(extended, k)) s = std::move(extended);
  }
  return s;
}

bool labels_decrease(const LabelledTree& t) {
  if (t.is_empty()) return true;
  for (const auto& c : t.children())
    if (!c.is_empty() && (!(c.label() < t.label()) || !labels_decrease(c))) return false;
  return true;
}

struct Unit {
  std::string name;
  PRTerm term;
  std::size_t arity;
};

std::vector<Unit> compiled_corpus() {
  return {{"add", terms::add(), 2}, {"mult", terms::mult(), 2}, {"pred", terms::pred(), 1},
          {"monus", terms::monus(), 2}};
}

// ---------------------------------------------------------------------------

Result criterion1() {
  Result r;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t trees = 0;
  std::vector<std::string> skipped;
  for (std::size_t k = 1; k <= 3; ++k) {
    for (std::uint64_t m = 0; m <= 4; ++m) {
      try {
        const BruteForceHeights oracle = brute_force_height(k, m);
        if (height_nil(k, m) != Ordinal(oracle.at(LabelledTree(k))))
          r.fail("height_nil(" + std::to_string(k) + "," + std::to_string(m) + ") differs from the oracle");
        for (const auto& [t, h] : oracle.entries()) {
          ++trees;
          if (height_tree(t, k, m) != Ordinal(h)) r.fail("height_tree differs on " + t.to_string());
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        skipped.push_back("(" + std::to_string(k) + "," + std::to_string(m) + ") holds " +
                          count_trees(k, m).str() + " trees");
        r.pass = false;
      }
    }
  }
  const double secs = seconds_since(t0);
  if (secs > kTreeSeconds) r.fail("took " + std::to_string(secs) + " s");
  r.detail << (r.detail.tellp() > 0 ? "; " : "") << trees << " trees matched in " << secs << " s";
  for (const auto& s : skipped) r.detail << "; oracle over budget: " << s;
  return r;
}

Result criterion2() {
  Result r;
  auto expect = [&](const Ordinal& got, const Ordinal& want, const std::string& what) {
    if (got != want) r.fail(what + " = " + got.to_string() + ", expected " + want.to_string());
  };
  expect(height_nil(2, 3), 7, "h2(nil,3)");
  for (std::size_t k = 1; k <= 5; ++k)
    expect(height_nil(k, Ordinal::omega()), Ordinal::omega(), "h" + std::to_string(k) + "(nil,w)");
  expect(height_nil(2, Ordinal::parse("w+1")), Ordinal::parse("w*2+1"), "h2(nil,w+1)");
  std::mt19937_64 rng(kSeed);
  for (int i = 0; i < 50; ++i) {
    const Ordinal a = random_ordinal(rng, 2);
    expect(height_nil(1, a), a, "h1(nil," + a.to_string() + ")");
  }
  for (std::uint64_t k = 1; k <= 5; ++k)
    expect(exp_base_k(2, nat_prod_nat(Ordinal::omega(), k)), Ordinal::omega_power(Ordinal(k)),
           "2^(w*" + std::to_string(k) + ")");
  if (r.pass) r.detail << "all constants exact, 50 sampled alpha for k=1";
  return r;
}

Result criterion3() {
  Result r;
  std::mt19937_64 rng(kSeed + 3);
  std::size_t failures = 0, strict_cases = 0;
  for (std::size_t i = 0; i < kAlgebraSamples; ++i) {
    const Ordinal a = random_below_w4(rng), b = random_below_w4(rng), c = random_below_w4(rng);
    if (nat_sum(a, b) != nat_sum(b, a)) ++failures;
    if (nat_sum(nat_sum(a, b), c) != nat_sum(a, nat_sum(b, c))) ++failures;
    const Ordinal lo = std::min(a, b), hi = std::max(a, b);
    if (lo < hi) {
      ++strict_cases;
      if (!(nat_sum(lo, c) < nat_sum(hi, c)) || !(nat_sum(c, lo) < nat_sum(c, hi))) ++failures;
    }
  }
  if (failures) r.fail(std::to_string(failures) + " failures");
  r.detail << (failures ? "; " : "") << kAlgebraSamples << " triples, " << strict_cases << " strict pairs, "
           << failures << " failures";
  return r;
}

Result criterion4() {
  Result r;
  std::mt19937_64 rng(kSeed + 4);
  std::size_t failures = 0, extensions = 0;
  for (std::size_t i = 0; i < kErdosSequences; ++i) {
    const std::size_t k = 2 + i % 2;
    const auto s = random_homogeneous(rng, k);
    ErdosTree t(k);
    std::optional<Ordinal> previous;
    for (std::size_t n = 0; n < s.size(); ++n) {
      ++extensions;
      const std::vector<Point> prefix(s.begin(), s.begin() + static_cast<long>(n) + 1);
      const ErdosTree next = embed(prefix, k);
      const ColoredList added = insert_branch(t, s[n]);
      ColoredList parent = added;
      parent.elements.pop_back();
      if (!parent.colors.empty()) parent.colors.pop_back();
      const bool simulation = next.branch_count() == t.branch_count() + 1 && next.contains(added) &&
                              !t.contains(added) && t.contains(parent);
      const bool decreasing = labels_decrease(to_labelled_tree(next, k));
      const Ordinal f = f_star(prefix, k);
      const bool descends = !previous || f < *previous;
      const bool in_range = f < Ordinal::omega_power(Ordinal(std::uint64_t(k)));
      if (!(simulation && decreasing && descends && in_range)) ++failures;
      previous = f;
      t = next;
    }
  }
  if (failures) r.fail(std::to_string(failures) + " failing extensions");
  r.detail << (failures ? "; " : "") << kErdosSequences << " sequences, " << extensions << " extensions, "
           << failures << " failures";
  return r;
}

Result criterion5() {
  Result r;
  std::vector<std::pair<std::string, SequenceFn>> corpus;
  for (std::uint64_t c : {0, 3, 9}) corpus.emplace_back("const k=1 " + std::to_string(c), constant_sequence({c}));
  corpus.emplace_back("const k=2", constant_sequence({2, 5}));
  corpus.emplace_back("const k=3", constant_sequence({1, 0, 2}));
  for (std::uint64_t c : {4, 12}) {
    std::vector<Tuple> stair;
    for (std::uint64_t v = c + 1; v-- > 0;) stair.push_back({v});
    corpus.emplace_back("staircase k=1 from " + std::to_string(c), sequence_from_values(1, stair));
  }
  corpus.emplace_back("staircase k=2", sequence_from_values(2, {{2, 1}, {2, 0}, {1, 3}, {1, 2}, {1, 0}, {0, 4}, {0, 1}}));
  corpus.emplace_back("staircase k=2 to zero", sequence_from_values(2, {{1, 2}, {1, 1}, {1, 0}, {0, 2}, {0, 1}, {0, 0}}));
  corpus.emplace_back("staircase k=3",
                      sequence_from_values(3, {{1, 1, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}}));
  corpus.emplace_back("interleaved k=2", sequence_from_values(2, {{3, 0}, {2, 4}, {2, 4}, {1, 0}, {0, 0}}));
  std::mt19937_64 rng(kSeed + 5);
  for (int i = 0; i < 5; ++i) {
    const std::size_t k = 1 + i % 3;
    std::vector<Tuple> values;
    Tuple cur(k, 1);
    cur[0] = 2;
    values.push_back(cur);
    for (int step = 0; step < 6; ++step) {
      std::size_t h = k;
      while (h-- > 0 && cur[h] == 0) {
      }
      if (h >= k) break;
      cur[h] -= 1;
      for (std::size_t j = h + 1; j < k; ++j) cur[j] = std::uniform_int_distribution<int>(0, 1)(rng);
      values.push_back(cur);
    }
    corpus.emplace_back("random descent k=" + std::to_string(k), sequence_from_values(k, values));
  }
  struct PhiCase {
    const char* name;
    PRTerm term;
    std::vector<Natural> args;
    std::vector<std::string> relations;
  };
  const std::vector<PhiCase> phis{
      {"phi pred(0)", terms::pred(), {0}, {"fwd", "T2"}},
      {"phi pred(1)", terms::pred(), {1}, {"fwd", "T2"}},
      {"phi pred(2)", terms::pred(), {2}, {"fwd", "T2"}},
      {"phi succ(4)", PRTerm::succ(), {4}, {"fwd"}},
      {"phi s(s(z))(1)", PRTerm::parse("(comp s (comp s z))"), {1}, {"fwd"}},
      {"phi s(p1)(3)", PRTerm::parse("(comp s (p 1 1))"), {3}, {"fwd"}},
  };
  for (const auto& c : phis) {
    const CompiledUnit unit = compile(c.term, c.args.size());
    const TransitionInvariant inv = unit.invariant.select(c.relations);
    const State s0 = input_state(unit, c.args);
    if (!check_invariant(unit.program, s0, inv, kDefaultMaxSteps).passed()) {
      r.fail(std::string(c.name) + ": compact invariant does not cover the trace");
      continue;
    }
    corpus.emplace_back(c.name, phi_sequence(unit.program, s0, inv));
  }

  std::size_t checks = 0, violated = 0;
  Natural largest = 0;
  for (const auto& [name, sigma] : corpus) {
    if (sigma.k > 3) r.fail(name + " has k > 3");
    for (std::uint64_t n = 0; n <= 5; ++n) {
      try {
        const Natural g = bound_g(sigma, n);
        const Natural m = find_nondescent(sigma, n);
        largest = std::max(largest, g);
        ++checks;
        if (m < n || m > g || !lex_le(sigma(m), sigma(m + 1))) {
          ++violated;
          r.fail(name + ": witness outside [n, g(n)]");
        }
        if (g >= kBoundCeiling) r.fail(name + ": bound " + g.str() + " reaches the ceiling");
      } catch (const Error& e) {
        if (e.code() == ErrorCode::LemmaViolated) ++violated;
        r.fail(name + " n=" + std::to_string(n) + ": " + e.what());
      }
    }
  }
  if (corpus.size() < kBoundCorpusMin) r.fail("corpus too small");
  r.detail << (r.pass ? "" : "; ") << corpus.size() << " sequences, " << checks << " checks, " << violated
           << " LemmaViolated, largest g(n) = " << largest;
  return r;
}

Result criterion6() {
  Result r;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t runs = 0;
  for (const auto& u : compiled_corpus()) {
    const CompiledUnit unit = compile(u.term, u.arity);
    for (const auto& args : all_inputs(u.arity, kInputTop)) {
      ++runs;
      const Trace t = run_trace(unit.program, input_state(unit, args), kDefaultMaxSteps);
      if (!t.terminated) {
        r.fail(u.name + " did not terminate");
        continue;
      }
      if (result_of(unit, t.states.back()) != eval_pr(u.term, args)) r.fail(u.name + " disagrees with eval_pr");
    }
  }
  const double secs = seconds_since(t0);
  if (secs > kCompilerSeconds) r.fail("took " + std::to_string(secs) + " s");
  r.detail << (r.pass ? "" : "; ") << runs << " runs agree in " << secs << " s";
  return r;
}

Result criterion7() {
  Result r;
  std::vector<Unit> units = compiled_corpus();
  units.push_back({"zero", PRTerm::zero(), 1});
  units.push_back({"succ", PRTerm::succ(), 1});
  units.push_back({"proj", PRTerm::proj(2, 3), 3});
  std::size_t traces = 0, pairs = 0, mutants = 0;
  for (const auto& u : units) {
    const CompiledUnit unit = compile(u.term, u.arity);
    const auto inputs = all_inputs(u.arity, kInputTop);
    for (const auto& args : inputs) {
      const CheckReport rep = check_invariant(unit.program, input_state(unit, args), unit.invariant, kDefaultMaxSteps);
      ++traces;
      pairs += rep.pairs_checked;
      if (!rep.passed() || !rep.trace_terminated)
        r.fail(u.name + ": " + std::to_string(rep.violation_count) + " violations");
    }
    const std::vector<std::function<RankExpr(const RankExpr&)>> corruptions{
        [](const RankExpr&) { return RankExpr::constant(7); },
        [](const RankExpr& e) { return RankExpr::binary(RankExpr::Kind::Sub, RankExpr::constant(100000), e); },
    };
    for (std::size_t i = 0; i < unit.invariant.k(); ++i) {
      for (const auto& corrupt : corruptions) {
        ++mutants;
        TransitionInvariant mutated = unit.invariant;
        mutated.relations[i].rank = corrupt(mutated.relations[i].rank);
        bool caught = false;
        for (const auto& args : inputs) {
          if (!check_invariant(unit.program, input_state(unit, args), mutated, kDefaultMaxSteps).passed()) {
            caught = true;
            break;
          }
        }
        if (!caught) r.fail(u.name + ": corrupted rank of " + unit.invariant.relations[i].name + " went unnoticed");
      }
    }
  }
  r.detail << (r.pass ? "" : "; ") << traces << " traces, " << pairs << " pairs, 0 violations expected; "
           << mutants << " mutants";
  return r;
}

Result criterion8() {
  Result r;
  const std::vector<std::tuple<std::string, PRTerm, std::vector<Natural>>> cases{
      {"add(1,1)", terms::add(), {1, 1}}, {"add(2,1)", terms::add(), {2, 1}}, {"mult(2,2)", terms::mult(), {2, 2}}};
  for (const auto& [name, term, args] : cases) {
    const CompiledUnit unit = compile(term);
    const State s0 = input_state(unit, args);
    const Trace t = run_trace(unit.program, s0, kDefaultMaxSteps);
    const Natural bound = step_bound(unit.program, s0, unit.invariant);
    const bool ok = t.terminated && Natural(t.steps()) <= bound;
    if (!ok) r.fail(name + " exceeds its bound");
    const std::string digits = bound.str();
    r.detail << (r.detail.tellp() > 0 ? "; " : "") << name << ": " << t.steps() << " steps <= bound of "
             << digits.size() << " digits (k=" << unit.invariant.k() << ")";
  }
  return r;
}

}  // namespace

int main() {
  const std::vector<std::function<Result()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                     criterion5, criterion6, criterion7, criterion8};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i]();
    } catch (const std::exception& e) {
      r.fail(std::string("unexpected error: ") + e.what());
    }
    all = all && r.pass;
    std::cout << "criterion " << i + 1 << ": " << (r.pass ? "PASS" : "FAIL") << " - " << r.detail.str() << std::endl;
  }
  return all ? 0 : 1;
}
