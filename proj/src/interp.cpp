#include "ordterm/interp.hpp"

#include "ordterm/error.hpp"
#include "ordterm/json_natural.hpp"

namespace ordterm {

std::strong_ordering operator<=>(const State& a, const State& b) {
  if (auto c = a.location <=> b.location; c != 0) return c;
  if (a.env.size() != b.env.size()) return a.env.size() <=> b.env.size();
  for (std::size_t i = 0; i < a.env.size(); ++i)
    if (a.env[i] != b.env[i]) return a.env[i] < b.env[i] ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

State initial_state(const Program& p, const std::map<std::string, Natural>& values) {
  State s{0, std::vector<Natural>(p.variables.size(), 0)};
  for (const auto& [name, v] : values) s.env[p.variable(name)] = v;
  return s;
}

bool is_final(const Program& p, const State& s) { return s.location >= p.code.size(); }

State step(const Program& p, const State& s) {
  if (is_final(p, s)) return s;
  State out = s;
  if (const auto* a = std::get_if<Assign>(&p.code[s.location])) {
    const Expr& e = a->expr;
    switch (e.kind) {
      case ExprKind::Const: out.env[a->var] = e.value; break;
      case ExprKind::Var: out.env[a->var] = s.env[e.var]; break;
      case ExprKind::Inc: out.env[a->var] = s.env[e.var] + 1; break;
      case ExprKind::Dec: out.env[a->var] = monus(s.env[e.var], 1); break;
    }
    out.location = a->next;
  } else {
    const auto& b = std::get<Branch>(p.code[s.location]);
    out.location = s.env[b.lhs] < s.env[b.rhs] ? b.on_true : b.on_false;
  }
  return out;
}

Trace run_trace(const Program& p, const State& s0, std::size_t max_steps) {
  if (s0.env.size() != p.variables.size())
    throw Error(ErrorCode::LengthMismatch, "state does not match the program's variables");
  Trace t;
  t.states.push_back(s0);
  while (!is_final(p, t.states.back())) {
    if (t.states.size() > max_steps) return t;
    t.states.push_back(step(p, t.states.back()));
  }
  t.terminated = true;
  return t;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const Program& p, const State& s) {
  nlohmann::json env = nlohmann::json::object();
  for (std::size_t i = 0; i < p.variables.size(); ++i) env[p.variables[i]] = natural_to_json(s.env.at(i));
  return {{"location", s.location}, {"env", env}};
}

State state_from_json(const Program& p, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("location") || !j.contains("env") || !j.at("env").is_object())
    throw Error(ErrorCode::ParseError, "state needs location and env");
  State s = initial_state(p);
  s.location = to_u64(natural_from_json(j.at("location")));
  if (j.at("env").size() != p.variables.size()) throw Error(ErrorCode::ParseError, "env must bind every variable");
  for (const auto& [name, v] : j.at("env").items()) s.env[p.variable(name)] = natural_from_json(v);
  return s;
}

nlohmann::json to_json(const Program& p, const Trace& t) {
  auto j = nlohmann::json::array();
  for (const auto& s : t.states) j.push_back(to_json(p, s));
  return j;
}

Trace trace_from_json(const Program& p, const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "trace must be a list of states");
  Trace t;
  for (const auto& s : j) t.states.push_back(state_from_json(p, s));
  t.terminated = !t.states.empty() && is_final(p, t.states.back());
  return t;
}

}  // namespace ordterm
