#include "ordterm/prcompile.hpp"

#include "ordterm/error.hpp"

namespace ordterm {

SpliceInfo splice_call(Program& caller, const CompiledUnit& callee, const std::vector<std::string>& actual_inputs,
                       const std::string& out, const std::string& fresh_prefix) {
  if (actual_inputs.size() != callee.input_vars.size())
    throw Error(ErrorCode::ArityMismatch, "callee takes " + std::to_string(callee.input_vars.size()) +
                                              " inputs, got " + std::to_string(actual_inputs.size()));
  std::vector<std::size_t> actual_slots;
  for (const auto& a : actual_inputs) actual_slots.push_back(caller.variable(a));
  const std::size_t out_slot = caller.variable(out);

  for (const auto& v : callee.program.variables)
    if (caller.find_variable(fresh_prefix + v))
      throw Error(ErrorCode::NameCollision, "'" + fresh_prefix + v + "' already exists in the caller");
  std::vector<std::size_t> rename;
  for (const auto& v : callee.program.variables) rename.push_back(caller.declare(fresh_prefix + v));

  SpliceInfo info{caller.code.size(), 0, 0};
  for (std::size_t i = 0; i < actual_slots.size(); ++i) {
    const std::size_t input = rename[callee.program.variable(callee.input_vars[i])];
    caller.code.push_back(Assign{input, Expr{ExprKind::Var, actual_slots[i], 0}, caller.code.size() + 1});
  }
  info.callee_offset = caller.code.size();
  const std::size_t o = info.callee_offset;
  for (const auto& ins : callee.program.code) {
    if (const auto* a = std::get_if<Assign>(&ins)) {
      Expr e = a->expr;
      if (e.kind != ExprKind::Const) e.var = rename[e.var];
      caller.code.push_back(Assign{rename[a->var], std::move(e), a->next + o});
    } else {
      const auto& b = std::get<Branch>(ins);
      caller.code.push_back(Branch{rename[b.lhs], rename[b.rhs], b.on_true + o, b.on_false + o});
    }
  }
  const std::size_t result = rename[callee.program.variable(callee.result_var)];
  caller.code.push_back(Assign{out_slot, Expr{ExprKind::Var, result, 0}, caller.code.size() + 1});
  info.end = caller.code.size();
  return info;
}

RankedRelation lift_relation(const RankedRelation& r, const std::string& var_prefix, const std::string& name_prefix,
                             std::size_t offset, std::size_t span, const std::vector<Atom>& extra) {
  if (r.predicate) throw Error(ErrorCode::InvalidArgument, "cannot lift an opaque predicate");
  RankedRelation out;
  out.name = name_prefix + r.name;
  out.pre = r.pre.shifted(offset, span);
  out.post = r.post.shifted(offset, span);
  auto move_operand = [&](Operand o, bool against_location) {
    if (o.kind == Operand::Kind::Var || o.kind == Operand::Kind::VarPrimed) o.name = var_prefix + o.name;
    if (o.kind == Operand::Kind::Const && against_location) o.value += offset;
    return o;
  };
  for (const auto& a : r.atoms)
    out.atoms.push_back({move_operand(a.lhs, a.rhs.is_location()), a.op, move_operand(a.rhs, a.lhs.is_location())});
  out.atoms.insert(out.atoms.end(), extra.begin(), extra.end());
  std::optional<RankExpr> loc;
  if (offset != 0)
    loc = RankExpr::binary(RankExpr::Kind::Sub, RankExpr::loc(), RankExpr::constant(offset));
  out.rank = r.rank.substitute([&](const std::string& v) { return var_prefix + v; }, loc);
  return out;
}

namespace {

Operand var(const std::string& name) { return Operand::var(name); }
Operand var_after(const std::string& name) { return Operand::var(name, true); }
Operand num(std::size_t n) { return Operand::constant(n); }

RankExpr minus(RankExpr a, RankExpr b) { return RankExpr::binary(RankExpr::Kind::Sub, std::move(a), std::move(b)); }

/// Control only moves forward: rank N - loc.
RankedRelation forward_relation(std::size_t final_location) {
  RankedRelation r;
  r.name = "fwd";
  r.atoms = {lt(Operand::loc(), Operand::loc(true))};
  r.rank = minus(RankExpr::constant(final_location), RankExpr::loc());
  return r;
}

std::vector<std::string> numbered(const std::string& stem, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

void lift_all(TransitionInvariant& into, const CompiledUnit& callee, const std::string& prefix,
              const std::string& name_prefix, std::size_t offset, const std::vector<Atom>& extra) {
  for (const auto& r : callee.invariant.relations)
    into.relations.push_back(
        lift_relation(r, prefix, name_prefix, offset, callee.program.final_location(), extra));
}

CompiledUnit compile_base(const PRTerm& t, std::size_t arity) {
  CompiledUnit u;
  u.input_vars = numbered("x", arity);
  u.result_var = "r";
  for (const auto& x : u.input_vars) u.program.declare(x);
  const std::size_t r = u.program.declare(u.result_var);
  Expr e;
  switch (t.kind()) {
    case PRTerm::Kind::Zero: e = {ExprKind::Const, 0, 0}; break;
    case PRTerm::Kind::Succ: e = {ExprKind::Inc, 0, 0}; break;
    default: e = {ExprKind::Var, t.index() - 1, 0}; break;
  }
  u.program.code.push_back(Assign{r, e, 1});
  u.invariant.relations.push_back(forward_relation(u.program.final_location()));
  return u;
}

CompiledUnit compile_comp(const PRTerm& t, std::size_t arity) {
  const PRTerm& h = t.parts()[0];
  const std::size_t q = t.parts().size() - 1;
  CompiledUnit u;
  u.input_vars = numbered("x", arity);
  u.result_var = "res";
  const auto outs = numbered("t", q);
  for (const auto& x : u.input_vars) u.program.declare(x);
  const std::size_t a = u.program.declare("a");
  u.program.declare(u.result_var);
  for (const auto& v : outs) u.program.declare(v);

  Program& p = u.program;
  p.code.push_back(Assign{a, Expr{ExprKind::Const, 0, 1}, 1});
  std::vector<std::pair<CompiledUnit, SpliceInfo>> calls;
  for (std::size_t i = 1; i <= q + 1; ++i) {
    if (i > 1) p.code.push_back(Assign{a, Expr{ExprKind::Inc, a, 0}, p.code.size() + 1});
    const bool is_h = i == q + 1;
    CompiledUnit callee = is_h ? compile(h, q) : compile(t.parts()[i], arity);
    const std::string prefix = "c" + std::to_string(i - 1) + "_";
    SpliceInfo info = splice_call(p, callee, is_h ? outs : u.input_vars, is_h ? u.result_var : outs[i - 1], prefix);
    calls.emplace_back(std::move(callee), info);
  }

  auto& rels = u.invariant.relations;
  rels.push_back(forward_relation(p.final_location()));
  RankedRelation phase;
  phase.name = "phase";
  phase.atoms = {lt(var("a"), num(q + 1)), lt(var("a"), var_after("a")), lt(var_after("a"), num(q + 2))};
  phase.rank = minus(RankExpr::constant(q + 2), RankExpr::var("a"));
  rels.push_back(std::move(phase));
  for (std::size_t i = 1; i <= q + 1; ++i) {
    const bool is_h = i == q + 1;
    const auto& [callee, info] = calls[i - 1];
    lift_all(u.invariant, callee, "c" + std::to_string(i - 1) + "_", is_h ? "h." : "g" + std::to_string(i) + ".",
             info.callee_offset, {eq(var("a"), num(i)), eq(var_after("a"), num(i))});
  }
  return u;
}

CompiledUnit compile_rec(const PRTerm& t, std::size_t arity) {
  const PRTerm& h = t.parts()[0];
  const PRTerm& g = t.parts()[1];
  const std::size_t n = arity - 1;
  CompiledUnit u;
  const auto xs = numbered("x", n);
  const auto zs = numbered("z", n);
  u.input_vars = {"y"};
  u.input_vars.insert(u.input_vars.end(), xs.begin(), xs.end());
  u.result_var = "w";
  Program& p = u.program;
  for (const auto& v : u.input_vars) p.declare(v);
  const std::size_t y = p.variable("y");
  const std::size_t z = p.declare("z");
  p.declare("w");
  for (const auto& v : zs) p.declare(v);

  p.code.push_back(Assign{z, Expr{ExprKind::Const, 0, 0}, 1});
  const CompiledUnit base = compile(h, n);
  const SpliceInfo base_call = splice_call(p, base, xs, "w", "c0_");
  for (std::size_t i = 0; i < n; ++i)
    p.code.push_back(Assign{p.variable(zs[i]), Expr{ExprKind::Var, p.variable(xs[i]), 0}, p.code.size() + 1});
  const std::size_t guard = p.code.size();
  p.code.push_back(Branch{z, y, guard + 1, 0});
  std::vector<std::string> step_inputs{"z", "w"};
  step_inputs.insert(step_inputs.end(), zs.begin(), zs.end());
  const CompiledUnit step = compile(g, n + 2);
  const SpliceInfo step_call = splice_call(p, step, step_inputs, "w", "c1_");
  p.code.push_back(Assign{z, Expr{ExprKind::Inc, z, 0}, guard});
  std::get<Branch>(p.code[guard]).on_false = p.final_location();

  auto& rels = u.invariant.relations;
  rels.push_back(forward_relation(p.final_location()));
  RankedRelation across;
  across.name = "T2";
  across.atoms = {lt(var("z"), var_after("z")), eq(var_after("y"), var("y"))};
  across.rank = minus(RankExpr::var("y"), RankExpr::var("z"));
  rels.push_back(std::move(across));
  lift_all(u.invariant, base, "c0_", "h.", base_call.callee_offset, {eq(var("z"), num(0)), eq(var_after("z"), num(0))});
  lift_all(u.invariant, step, "c1_", "iter.", step_call.callee_offset,
           {eq(var_after("z"), var("z")), eq(var_after("y"), var("y"))});
  return u;
}

}  // namespace

CompiledUnit compile(const PRTerm& t) { return compile(t, t.arity().min); }

CompiledUnit compile(const PRTerm& t, std::size_t arity) {
  if (!t.arity().accepts(arity))
    throw Error(ErrorCode::ArityMismatch, t.to_string() + " does not take " + std::to_string(arity) + " arguments");
  CompiledUnit u;
  switch (t.kind()) {
    case PRTerm::Kind::Zero:
    case PRTerm::Kind::Succ:
    case PRTerm::Kind::Proj: u = compile_base(t, arity); break;
    case PRTerm::Kind::Comp: u = compile_comp(t, arity); break;
    case PRTerm::Kind::Rec: u = compile_rec(t, arity); break;
  }
  u.program.validate();
  return u;
}

State input_state(const CompiledUnit& unit, const std::vector<Natural>& args) {
  if (args.size() != unit.input_vars.size())
    throw Error(ErrorCode::ArityMismatch, "unit takes " + std::to_string(unit.input_vars.size()) + " inputs, got " +
                                              std::to_string(args.size()));
  State s = initial_state(unit.program);
  for (std::size_t i = 0; i < args.size(); ++i) s.env[unit.program.variable(unit.input_vars[i])] = args[i];
  return s;
}

Natural result_of(const CompiledUnit& unit, const State& s) { return s.env.at(unit.program.variable(unit.result_var)); }

nlohmann::json to_json(const CompiledUnit& unit) {
  return {{"program", unit.program.to_text()},
          {"invariant", to_json(unit.invariant)},
          {"result_var", unit.result_var},
          {"input_vars", unit.input_vars}};
}

CompiledUnit unit_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "compiled unit must be an object");
  for (const char* key : {"program", "invariant", "result_var", "input_vars"})
    if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("compiled unit is missing '") + key + "'");
  CompiledUnit u;
  u.program = Program::parse(j.at("program").get<std::string>());
  u.invariant = invariant_from_json(j.at("invariant"));
  u.result_var = j.at("result_var").get<std::string>();
  u.input_vars = j.at("input_vars").get<std::vector<std::string>>();
  u.program.variable(u.result_var);
  for (const auto& v : u.input_vars) u.program.variable(v);
  return u;
}

}  // namespace ordterm
