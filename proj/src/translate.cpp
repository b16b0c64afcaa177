#include "nullrel/translate.hpp"

#include <atomic>

#include "nullrel/decomposed.hpp"

namespace nullrel {

TransCell TransCell::constant(Value v) {
  if (v.is_null()) return null();
  TransCell c;
  c.kind = Kind::Const;
  c.value = std::move(v);
  return c;
}
TransCell TransCell::variable(std::string name) {
  TransCell c;
  c.kind = Kind::Var;
  c.var = std::move(name);
  return c;
}

TransTuple trans_tuple(const TotalTuple& t) {
  TransTuple out;
  out.reserve(t.size());
  for (const Value& v : t) out.push_back(TransCell::constant(v));
  return out;
}

namespace {
std::atomic<std::size_t> g_budget{1000000};
}

std::size_t translation_node_budget() { return g_budget.load(); }
void set_translation_node_budget(std::size_t budget) { g_budget.store(budget); }

namespace {

struct OmegaCtx {
  const Schema& schema;
  bool simplify;
  int fresh_counter = 1;
  std::size_t nodes = 0;
  std::size_t budget = translation_node_budget();

  void charge(std::size_t n = 1) {
    nodes += n;
    if (nodes > budget) throw TranslateError("translation exceeded the node budget");
  }
  std::string fresh() { return "v" + std::to_string(fresh_counter++); }
};

FoleTerm cell_term(const TransCell& c) {
  switch (c.kind) {
    case TransCell::Kind::Const: return FoleTerm::constant(c.value);
    case TransCell::Kind::Var: return FoleTerm::variable(c.var);
    case TransCell::Kind::Null: return FoleTerm::null();
  }
  throw TranslateError("unreachable");
}

bool is_null_cell(const TransCell& c) { return c.kind == TransCell::Kind::Null; }

FormulaPtr simp_and(OmegaCtx& ctx, FormulaPtr a, FormulaPtr b) {
  if (ctx.simplify) {
    if (a->kind == Formula::Kind::True) return b;
    if (b->kind == Formula::Kind::True) return a;
    if (a->kind == Formula::Kind::False || b->kind == Formula::Kind::False) return f_false();
  }
  return f_and(std::move(a), std::move(b));
}
FormulaPtr simp_or(OmegaCtx& ctx, FormulaPtr a, FormulaPtr b) {
  if (ctx.simplify) {
    if (a->kind == Formula::Kind::False) return b;
    if (b->kind == Formula::Kind::False) return a;
    if (a->kind == Formula::Kind::True || b->kind == Formula::Kind::True) return f_true();
  }
  return f_or(std::move(a), std::move(b));
}
FormulaPtr simp_not(OmegaCtx& ctx, FormulaPtr a) {
  if (ctx.simplify) {
    if (a->kind == Formula::Kind::True) return f_false();
    if (a->kind == Formula::Kind::False) return f_true();
  }
  return f_not(std::move(a));
}
FormulaPtr simp_eq(OmegaCtx& ctx, const TransCell& a, const TransCell& b) {
  if (ctx.simplify && a.kind == TransCell::Kind::Const && b.kind == TransCell::Kind::Const)
    return a.value == b.value ? f_true() : f_false();
  return f_eq(cell_term(a), cell_term(b));
}
FormulaPtr simp_exists(OmegaCtx& ctx, const std::string& var, FormulaPtr body) {
  if (ctx.simplify && body->kind == Formula::Kind::False) return f_false();
  return f_exists(var, std::move(body));
}

FormulaPtr om(const NraPtr& e, const TransTuple& t, OmegaCtx& ctx) {
  ctx.charge();
  switch (e->kind) {
    case NraExpr::Kind::Relation: {
      std::vector<FoleTerm> terms;
      terms.reserve(t.size());
      for (const TransCell& c : t) terms.push_back(cell_term(c));
      return f_atom(e->rel, std::move(terms));
    }
    case NraExpr::Kind::SingletonConst: {
      if (is_null_cell(t[0])) return f_false();
      return simp_eq(ctx, t[0], TransCell::constant(e->value));
    }
    case NraExpr::Kind::SingletonNull:
      return is_null_cell(t[0]) ? f_true() : f_false();
    case NraExpr::Kind::Select: {
      const SelCond& c = *e->cond;
      if (c.kind == SelCond::Kind::EqConst) {
        if (is_null_cell(t[c.i - 1])) return f_false();
        return simp_and(ctx, om(e->lhs, t, ctx),
                        simp_eq(ctx, t[c.i - 1], TransCell::constant(c.v)));
      }
      if (c.kind == SelCond::Kind::EqCols) {
        if (is_null_cell(t[c.i - 1]) || is_null_cell(t[c.j - 1])) return f_false();
        return simp_and(ctx, om(e->lhs, t, ctx), simp_eq(ctx, t[c.i - 1], t[c.j - 1]));
      }
      throw TranslateError("omega: selection not in expanded form");
    }
    case NraExpr::Kind::Project: {
      int n = check_arity(e->lhs, ctx.schema);
      std::vector<int> complement;
      {
        std::set<int> kept(e->cols.begin(), e->cols.end());
        for (int i = 1; i <= n; ++i)
          if (!kept.count(i)) complement.push_back(i);
      }
      if (complement.size() > 30) throw TranslateError("projection complement too wide");
      // fresh x_1 .. x_n, one per position of the child expression
      std::vector<std::string> fresh_vars;
      fresh_vars.reserve(n);
      for (int i = 0; i < n; ++i) fresh_vars.push_back(ctx.fresh());

      FormulaPtr disj;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << complement.size()); ++mask) {
        TransTuple th(n);
        for (std::size_t k = 0; k < e->cols.size(); ++k) th[e->cols[k] - 1] = t[k];
        for (std::size_t b = 0; b < complement.size(); ++b) {
          int pos = complement[b];
          th[pos - 1] = (mask & (std::uint64_t{1} << b))
                            ? TransCell::null()
                            : TransCell::variable(fresh_vars[pos - 1]);
        }
        FormulaPtr d = om(e->lhs, th, ctx);
        disj = disj ? simp_or(ctx, std::move(disj), std::move(d)) : std::move(d);
        ctx.charge();
      }
      for (auto it = fresh_vars.rbegin(); it != fresh_vars.rend(); ++it)
        disj = simp_exists(ctx, *it, std::move(disj));
      return disj;
    }
    case NraExpr::Kind::Product: {
      int n1 = check_arity(e->lhs, ctx.schema);
      TransTuple t1(t.begin(), t.begin() + n1);
      TransTuple t2(t.begin() + n1, t.end());
      FormulaPtr a = om(e->lhs, t1, ctx);
      FormulaPtr b = om(e->rhs, t2, ctx);
      return simp_and(ctx, std::move(a), std::move(b));
    }
    case NraExpr::Kind::Union:
      return simp_or(ctx, om(e->lhs, t, ctx), om(e->rhs, t, ctx));
    case NraExpr::Kind::Diff:
      return simp_and(ctx, om(e->lhs, t, ctx), simp_not(ctx, om(e->rhs, t, ctx)));
    default:
      throw TranslateError("omega: expression not in expanded form");
  }
}

}  // namespace

FormulaPtr omega(const NraPtr& e, const TransTuple& t, const Schema& schema, bool simplify) {
  NraPtr core = expand_derived(e, schema);
  if (static_cast<int>(t.size()) != check_arity(core, schema))
    throw TranslateError("tuple arity does not match the expression");
  OmegaCtx ctx{schema, simplify};
  return om(core, t, ctx);
}

std::string decomposed_rel_name(const std::string& rel, const std::vector<int>& positions) {
  std::string name = rel + "~{";
  for (std::size_t k = 0; k < positions.size(); ++k) {
    if (k) name += ",";
    name += std::to_string(positions[k]);
  }
  return name + "}";
}

std::optional<std::pair<std::string, std::vector<int>>> parse_decomposed_rel_name(
    const std::string& name) {
  auto tilde = name.find("~{");
  if (tilde == std::string::npos || name.empty() || name.back() != '}') return std::nullopt;
  std::string rel = name.substr(0, tilde);
  std::vector<int> positions;
  std::string body = name.substr(tilde + 2, name.size() - tilde - 3);
  std::size_t k = 0;
  while (k < body.size()) {
    std::size_t comma = body.find(',', k);
    std::string part = body.substr(k, comma == std::string::npos ? comma : comma - k);
    try {
      positions.push_back(std::stoi(part));
    } catch (...) {
      return std::nullopt;
    }
    if (comma == std::string::npos) break;
    k = comma + 1;
  }
  return std::make_pair(std::move(rel), std::move(positions));
}

Schema decomposed_schema(const Schema& base) {
  Schema out;
  for (const auto& [name, decl] : base.relations()) {
    if (decl.arity > 12) throw TranslateError("relation too wide to decompose: " + name);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << decl.arity); ++mask) {
      std::vector<int> positions;
      for (int b = 0; b < decl.arity; ++b)
        if (mask & (std::uint32_t{1} << b)) positions.push_back(b + 1);
      RelationDecl slot;
      slot.arity = static_cast<int>(positions.size());
      out.add_relation(decomposed_rel_name(name, positions), slot);
    }
  }
  for (const Value& v : base.declared_constants()) out.declare_constant(v);
  return out;
}

InstanceN decomposed_as_instance(const InstanceDecomposed& d) {
  InstanceN out;
  out.schema = decomposed_schema(d.schema);
  for (const auto& [key, tuples] : d.slots) {
    auto& dst = out.data[decomposed_rel_name(key.first, key.second)];
    dst.insert(tuples.begin(), tuples.end());
  }
  return out;
}

NraPtr ra_decomp_to_nra(const NraPtr& e, const Schema& base_schema) {
  switch (e->kind) {
    case NraExpr::Kind::Relation: {
      auto parsed = parse_decomposed_rel_name(e->rel);
      if (!parsed) throw TranslateError("expected a decomposed relation, got " + e->rel);
      const auto& [rel, positions] = *parsed;
      int n = base_schema.arity(rel);
      std::set<int> kept(positions.begin(), positions.end());
      NraPtr body = nra_relation(rel);
      // sel[isNull(...)] over the missing positions, innermost first
      for (int i = n; i >= 1; --i)
        if (!kept.count(i)) body = nra_select(cond_is_null(i), std::move(body));
      for (auto it = positions.rbegin(); it != positions.rend(); ++it)
        body = nra_select(cond_is_not_null(*it), std::move(body));
      return nra_project(positions, std::move(body));
    }
    case NraExpr::Kind::SingletonConst: return e;
    case NraExpr::Kind::SingletonNull:
      throw TranslateError("null singleton in a classical algebra expression");
    case NraExpr::Kind::Select:
      return nra_select(e->cond, ra_decomp_to_nra(e->lhs, base_schema));
    case NraExpr::Kind::Project:
      return nra_project(e->cols, ra_decomp_to_nra(e->lhs, base_schema));
    case NraExpr::Kind::Product:
      return nra_product(ra_decomp_to_nra(e->lhs, base_schema),
                         ra_decomp_to_nra(e->rhs, base_schema));
    case NraExpr::Kind::Union:
      return nra_union(ra_decomp_to_nra(e->lhs, base_schema),
                       ra_decomp_to_nra(e->rhs, base_schema));
    case NraExpr::Kind::Diff:
      return nra_diff(ra_decomp_to_nra(e->lhs, base_schema),
                      ra_decomp_to_nra(e->rhs, base_schema));
    case NraExpr::Kind::Intersect:
      return nra_intersect(ra_decomp_to_nra(e->lhs, base_schema),
                           ra_decomp_to_nra(e->rhs, base_schema));
    case NraExpr::Kind::Join:
      return nra_join(e->join_on, ra_decomp_to_nra(e->lhs, base_schema),
                      ra_decomp_to_nra(e->rhs, base_schema));
    case NraExpr::Kind::LeftOuterJoin:
      throw TranslateError("outer join in a classical algebra expression");
  }
  throw TranslateError("unreachable");
}

NraPtr fole_to_nra(const FormulaPtr& f, const Schema& base_schema) {
  if (!free_vars(f).empty())
    throw TranslateError("only closed formulas translate to emptiness statements");
  if (!is_safe_range(f))
    throw NotSafeRangeError("formula is not safe-range");
  return ra_decomp_to_nra(fol_to_ra(omega_f(f)), base_schema);
}

}  // namespace nullrel
