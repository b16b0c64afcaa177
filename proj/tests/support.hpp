// Shared test machinery: deterministic random generators for instances,
// algebra expressions and formulas, plus the independent oracles the
// implementation is checked against. The oracles re-derive semantics from
// the definitions (literal set-builder evaluation, substitution-based
// satisfaction) and share no evaluation code with the library.

#ifndef NULLREL_TESTS_SUPPORT_HPP
#define NULLREL_TESTS_SUPPORT_HPP

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "nullrel/decomposed.hpp"
#include "nullrel/fole.hpp"
#include "nullrel/instance.hpp"
#include "nullrel/nra.hpp"

namespace testsupport {

using namespace nullrel;

using Rng = std::mt19937;

inline int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}
inline bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

// ---------------------------------------------------------------- instances

inline std::vector<Value> small_domain(int n) {
  std::vector<Value> out;
  const char* names[] = {"a", "b", "c", "d"};
  for (int i = 0; i < n && i < 4; ++i) out.push_back(Value::text(names[i]));
  return out;
}

struct InstanceOptions {
  int max_relations = 3;
  int max_arity = 3;
  int max_tuples = 6;
  int domain_size = 4;
  double null_prob = 0.25;
  bool allow_zero_ary = false;
};

inline InstanceN random_instance(Rng& rng, const InstanceOptions& opt = {}) {
  InstanceN inst;
  std::vector<Value> dom = small_domain(opt.domain_size);
  int nrel = pick(rng, 1, opt.max_relations);
  const char* names[] = {"r", "p", "q"};
  for (int k = 0; k < nrel; ++k) {
    RelationDecl decl;
    decl.arity = pick(rng, opt.allow_zero_ary ? 0 : 1, opt.max_arity);
    inst.schema.add_relation(names[k], decl);
    inst.data.try_emplace(names[k]);
    int ntup = pick(rng, 0, opt.max_tuples);
    for (int t = 0; t < ntup; ++t) {
      TotalTuple tup;
      for (int c = 0; c < decl.arity; ++c)
        tup.push_back(chance(rng, opt.null_prob) ? Value::null()
                                                 : dom[pick(rng, 0, (int)dom.size() - 1)]);
      inst.data[names[k]].insert(std::move(tup));
    }
  }
  return inst;
}

// --------------------------------------------------- naive algebra evaluator

// Literal re-implementation of the evaluation figures: core operators by
// their set-builder definitions, derived operators by their defining
// equations over already-evaluated operand sets.
inline Relation naive_eval(const NraPtr& e, const InstanceN& inst);

inline Relation naive_diff(const Relation& a, const Relation& b) {
  Relation out;
  for (const TotalTuple& t : a)
    if (!b.count(t)) out.insert(t);
  return out;
}

inline Relation naive_sel_atom(const SelCond& c, const Relation& in) {
  Relation out;
  switch (c.kind) {
    case SelCond::Kind::EqConst:
      for (const TotalTuple& s : in)
        if (!s[c.i - 1].is_null() && s[c.i - 1] == c.v) out.insert(s);
      return out;
    case SelCond::Kind::EqCols:
      for (const TotalTuple& s : in)
        if (!s[c.i - 1].is_null() && !s[c.j - 1].is_null() && s[c.i - 1] == s[c.j - 1])
          out.insert(s);
      return out;
    case SelCond::Kind::NeqConst: {  // e - sel[i=v](e)
      Relation eq;
      for (const TotalTuple& s : in)
        if (!s[c.i - 1].is_null() && s[c.i - 1] == c.v) eq.insert(s);
      return naive_diff(in, eq);
    }
    case SelCond::Kind::NeqCols: {  // sel[i=i](sel[j=j](e)) - sel[i=j](e)
      Relation guarded;
      for (const TotalTuple& s : in)
        if (!s[c.i - 1].is_null() && !s[c.j - 1].is_null()) guarded.insert(s);
      Relation eq;
      for (const TotalTuple& s : in)
        if (!s[c.i - 1].is_null() && !s[c.j - 1].is_null() && s[c.i - 1] == s[c.j - 1])
          eq.insert(s);
      return naive_diff(guarded, eq);
    }
    case SelCond::Kind::EqNull:
    case SelCond::Kind::NeqNull: return {};  // e - e
    case SelCond::Kind::IsNull: {            // e - sel[i=i](e)
      Relation eq;
      for (const TotalTuple& s : in)
        if (!s[c.i - 1].is_null()) eq.insert(s);
      return naive_diff(in, eq);
    }
    case SelCond::Kind::IsNotNull: {  // sel[i=i](e)
      Relation out2;
      for (const TotalTuple& s : in)
        if (!s[c.i - 1].is_null()) out2.insert(s);
      return out2;
    }
    default: throw std::logic_error("not atomic");
  }
}

inline Relation naive_sel(const SelCondPtr& c, const Relation& in, bool negated) {
  switch (c->kind) {
    case SelCond::Kind::And: {  // negated: union of negated parts (de Morgan)
      Relation l = naive_sel(c->lhs, in, negated);
      Relation r = naive_sel(c->rhs, in, negated);
      if (negated) {
        l.insert(r.begin(), r.end());
        return l;
      }
      return naive_diff(l, naive_diff(l, r));  // intersection as e - (e - e')
    }
    case SelCond::Kind::Or: {
      Relation l = naive_sel(c->lhs, in, negated);
      Relation r = naive_sel(c->rhs, in, negated);
      if (negated) return naive_diff(l, naive_diff(l, r));
      l.insert(r.begin(), r.end());
      return l;
    }
    case SelCond::Kind::Not: return naive_sel(c->lhs, in, !negated);
    default: {
      if (!negated) return naive_sel_atom(*c, in);
      // absorb one negation and evaluate the flipped atom
      SelCond flipped = *c;
      switch (c->kind) {
        case SelCond::Kind::EqConst: flipped.kind = SelCond::Kind::NeqConst; break;
        case SelCond::Kind::NeqConst: flipped.kind = SelCond::Kind::EqConst; break;
        case SelCond::Kind::EqCols: flipped.kind = SelCond::Kind::NeqCols; break;
        case SelCond::Kind::NeqCols: flipped.kind = SelCond::Kind::EqCols; break;
        case SelCond::Kind::EqNull: flipped.kind = SelCond::Kind::NeqNull; break;
        case SelCond::Kind::NeqNull: flipped.kind = SelCond::Kind::EqNull; break;
        case SelCond::Kind::IsNull: flipped.kind = SelCond::Kind::IsNotNull; break;
        case SelCond::Kind::IsNotNull: flipped.kind = SelCond::Kind::IsNull; break;
        default: throw std::logic_error("unreachable");
      }
      return naive_sel_atom(flipped, in);
    }
  }
}

inline Relation naive_eval(const NraPtr& e, const InstanceN& inst) {
  switch (e->kind) {
    case NraExpr::Kind::Relation: return inst.at(e->rel);
    case NraExpr::Kind::SingletonConst:
    case NraExpr::Kind::SingletonNull: return {TotalTuple{e->value}};
    case NraExpr::Kind::Select: return naive_sel(e->cond, naive_eval(e->lhs, inst), false);
    case NraExpr::Kind::Project: {
      Relation out;
      for (const TotalTuple& s : naive_eval(e->lhs, inst)) {
        TotalTuple p;
        for (int c : e->cols) p.push_back(s[c - 1]);
        out.insert(p);
      }
      return out;
    }
    case NraExpr::Kind::Product: {
      Relation out;
      for (const TotalTuple& a : naive_eval(e->lhs, inst))
        for (const TotalTuple& b : naive_eval(e->rhs, inst)) {
          TotalTuple t = a;
          t.insert(t.end(), b.begin(), b.end());
          out.insert(t);
        }
      return out;
    }
    case NraExpr::Kind::Union: {
      Relation out = naive_eval(e->lhs, inst);
      Relation r = naive_eval(e->rhs, inst);
      out.insert(r.begin(), r.end());
      return out;
    }
    case NraExpr::Kind::Diff: return naive_diff(naive_eval(e->lhs, inst), naive_eval(e->rhs, inst));
    case NraExpr::Kind::Intersect: {  // e - (e - e')
      Relation l = naive_eval(e->lhs, inst);
      Relation r = naive_eval(e->rhs, inst);
      return naive_diff(l, naive_diff(l, r));
    }
    case NraExpr::Kind::Join:
    case NraExpr::Kind::LeftOuterJoin: {
      // defining equations over the operand sets
      Relation l = naive_eval(e->lhs, inst);
      Relation r = naive_eval(e->rhs, inst);
      int m = check_arity(e->lhs, inst.schema);
      int n = check_arity(e->rhs, inst.schema);
      Relation prod;
      for (const TotalTuple& a : l)
        for (const TotalTuple& b : r) {
          TotalTuple t = a;
          t.insert(t.end(), b.begin(), b.end());
          prod.insert(t);
        }
      Relation selected;
      for (const TotalTuple& s : prod) {
        bool ok = true;
        for (auto [i, k] : e->join_on) {
          const Value& x = s[i - 1];
          const Value& y = s[m + k - 1];
          if (x.is_null() || y.is_null() || !(x == y)) {
            ok = false;
            break;
          }
        }
        if (ok) selected.insert(s);
      }
      std::set<int> dropped;
      for (auto [i, k] : e->join_on) dropped.insert(m + k);
      Relation join;
      for (const TotalTuple& s : selected) {
        TotalTuple t;
        for (int c = 1; c <= m + n; ++c)
          if (!dropped.count(c)) t.push_back(s[c - 1]);
        join.insert(t);
      }
      if (e->kind == NraExpr::Kind::Join) return join;
      // (l join r) union (l - proj[1..m](l join r)) x <N>^(n - #on)
      Relation joined_left;
      for (const TotalTuple& t : join) joined_left.insert(TotalTuple(t.begin(), t.begin() + m));
      Relation out = join;
      for (const TotalTuple& a : naive_diff(l, joined_left)) {
        TotalTuple t = a;
        for (std::size_t k = 0; k < n - e->join_on.size(); ++k) t.push_back(Value::null());
        out.insert(t);
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

// --------------------------------------------- substitution-based satisfaction

// Independent satisfaction check: quantifiers are expanded by substituting
// each domain element for the variable, so evaluation only ever sees ground
// formulas.
inline FormulaPtr substitute(const FormulaPtr& f, const std::string& x, const Value& v) {
  auto sub_term = [&](const FoleTerm& t) {
    if (t.kind == FoleTerm::Kind::Var && t.var == x) return FoleTerm::constant(v);
    return t;
  };
  switch (f->kind) {
    case Formula::Kind::Atom: {
      std::vector<FoleTerm> ts;
      for (const FoleTerm& t : f->terms) ts.push_back(sub_term(t));
      return f->positions ? f_atom_decomposed(f->pred, *f->positions, ts) : f_atom(f->pred, ts);
    }
    case Formula::Kind::Eq: return f_eq(sub_term(f->t1), sub_term(f->t2));
    case Formula::Kind::True:
    case Formula::Kind::False: return f;
    case Formula::Kind::Not: return f_not(substitute(f->lhs, x, v));
    case Formula::Kind::And: return f_and(substitute(f->lhs, x, v), substitute(f->rhs, x, v));
    case Formula::Kind::Or: return f_or(substitute(f->lhs, x, v), substitute(f->rhs, x, v));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      if (f->var == x) return f;  // shadowed
      FormulaPtr body = substitute(f->lhs, x, v);
      return f->kind == Formula::Kind::Exists ? f_exists(f->var, body) : f_forall(f->var, body);
    }
  }
  throw std::logic_error("unreachable");
}

inline bool brute_satisfies(const InstancePartial& inst, const FormulaPtr& f,
                            const std::set<Value>& domain) {
  switch (f->kind) {
    case Formula::Kind::Atom: {
      PartialTuple tau;
      tau.arity = static_cast<int>(f->terms.size());
      for (std::size_t k = 0; k < f->terms.size(); ++k) {
        const FoleTerm& t = f->terms[k];
        if (t.kind == FoleTerm::Kind::Var) throw std::logic_error("non-ground atom");
        if (t.kind == FoleTerm::Kind::Const) tau.cells.emplace((int)k + 1, t.value);
      }
      return inst.at(f->pred).count(tau) != 0;
    }
    case Formula::Kind::Eq: return f->t1.value == f->t2.value;
    case Formula::Kind::True: return true;
    case Formula::Kind::False: return false;
    case Formula::Kind::Not: return !brute_satisfies(inst, f->lhs, domain);
    case Formula::Kind::And:
      return brute_satisfies(inst, f->lhs, domain) && brute_satisfies(inst, f->rhs, domain);
    case Formula::Kind::Or:
      return brute_satisfies(inst, f->lhs, domain) || brute_satisfies(inst, f->rhs, domain);
    case Formula::Kind::Exists: {
      for (const Value& v : domain)
        if (brute_satisfies(inst, substitute(f->lhs, f->var, v), domain)) return true;
      return false;
    }
    case Formula::Kind::Forall: {
      for (const Value& v : domain)
        if (!brute_satisfies(inst, substitute(f->lhs, f->var, v), domain)) return false;
      return true;
    }
  }
  throw std::logic_error("unreachable");
}

inline std::size_t quantifier_depth(const FormulaPtr& f) {
  if (!f) return 0;
  std::size_t n = std::max(quantifier_depth(f->lhs), quantifier_depth(f->rhs));
  if (f->kind == Formula::Kind::Exists || f->kind == Formula::Kind::Forall) ++n;
  return n;
}

inline std::size_t count_quantifiers(const FormulaPtr& f) {
  if (!f) return 0;
  std::size_t n = count_quantifiers(f->lhs) + count_quantifiers(f->rhs);
  if (f->kind == Formula::Kind::Exists || f->kind == Formula::Kind::Forall) ++n;
  return n;
}

// Cost bound for the substitution-based oracle: domain^quantifiers paths.
inline bool brute_force_feasible(const FormulaPtr& f, std::size_t domain_size,
                                 std::size_t limit = 300000) {
  std::size_t q = count_quantifiers(f);
  double paths = 1;
  for (std::size_t k = 0; k < q; ++k) {
    paths *= static_cast<double>(domain_size ? domain_size : 1);
    if (paths > static_cast<double>(limit)) return false;
  }
  return paths * static_cast<double>(formula_size(f)) <= static_cast<double>(limit) * 64;
}

inline bool brute_satisfies(const InstancePartial& inst, const Assignment& a, const FormulaPtr& f,
                            const std::set<Value>& domain) {
  FormulaPtr g = f;
  for (const auto& [x, v] : a) g = substitute(g, x, v);
  return brute_satisfies(inst, g, domain);
}

// ------------------------------------------------- random algebra expressions

inline SelCondPtr random_cond(Rng& rng, int arity, const std::vector<Value>& dom, int depth) {
  if (depth > 0 && chance(rng, 0.3)) {
    switch (pick(rng, 0, 2)) {
      case 0: return cond_and(random_cond(rng, arity, dom, depth - 1),
                              random_cond(rng, arity, dom, depth - 1));
      case 1: return cond_or(random_cond(rng, arity, dom, depth - 1),
                             random_cond(rng, arity, dom, depth - 1));
      default: return cond_not(random_cond(rng, arity, dom, depth - 1));
    }
  }
  int i = pick(rng, 1, arity);
  switch (pick(rng, 0, 7)) {
    case 0: return cond_eq_const(i, dom[pick(rng, 0, (int)dom.size() - 1)]);
    case 1: return cond_neq_const(i, dom[pick(rng, 0, (int)dom.size() - 1)]);
    case 2: return cond_eq_cols(i, pick(rng, 1, arity));
    case 3: return cond_neq_cols(i, pick(rng, 1, arity));
    case 4: return cond_is_null(i);
    case 5: return cond_is_not_null(i);
    case 6: return cond_eq_null(i);
    default: return cond_neq_null(i);
  }
}

inline NraPtr random_nra(Rng& rng, const Schema& schema, const std::vector<Value>& dom,
                         int depth, int max_arity = 4);

inline NraPtr random_nra_with_arity(Rng& rng, const Schema& schema, const std::vector<Value>& dom,
                                    int depth, int arity, int max_arity = 4) {
  // a relation of the right arity, or a projection forced to it
  std::vector<std::string> fits;
  for (const auto& [name, decl] : schema.relations())
    if (decl.arity == arity) fits.push_back(name);
  if (!fits.empty() && chance(rng, 0.5))
    return nra_relation(fits[pick(rng, 0, (int)fits.size() - 1)]);
  if (arity == 1 && chance(rng, 0.3))
    return nra_singleton(chance(rng, 0.3) ? Value::null()
                                          : dom[pick(rng, 0, (int)dom.size() - 1)]);
  NraPtr child = random_nra(rng, schema, dom, depth > 0 ? depth - 1 : 0, max_arity);
  int have = check_arity(child, schema);
  while (have < arity) {
    child = nra_product(child, nra_singleton(chance(rng, 0.3)
                                                 ? Value::null()
                                                 : dom[pick(rng, 0, (int)dom.size() - 1)]));
    ++have;
  }
  std::vector<int> all;
  for (int c = 1; c <= have; ++c) all.push_back(c);
  std::shuffle(all.begin(), all.end(), rng);
  std::vector<int> cols(all.begin(), all.begin() + arity);
  return nra_project(std::move(cols), std::move(child));
}

inline NraPtr random_nra(Rng& rng, const Schema& schema, const std::vector<Value>& dom,
                         int depth, int max_arity) {
  std::vector<std::string> rels;
  for (const auto& [name, decl] : schema.relations())
    if (decl.arity >= 1 && decl.arity <= max_arity) rels.push_back(name);
  auto leaf = [&]() -> NraPtr {
    if (!rels.empty() && chance(rng, 0.8))
      return nra_relation(rels[pick(rng, 0, (int)rels.size() - 1)]);
    return nra_singleton(chance(rng, 0.3) ? Value::null()
                                          : dom[pick(rng, 0, (int)dom.size() - 1)]);
  };
  if (depth <= 0 || chance(rng, 0.25)) return leaf();
  switch (pick(rng, 0, 7)) {
    case 0: {
      NraPtr child = random_nra(rng, schema, dom, depth - 1, max_arity);
      int n = check_arity(child, schema);
      if (n == 0) return child;
      return nra_select(random_cond(rng, n, dom, 1), std::move(child));
    }
    case 1: {
      NraPtr child = random_nra(rng, schema, dom, depth - 1, max_arity);
      int n = check_arity(child, schema);
      std::vector<int> all;
      for (int c = 1; c <= n; ++c) all.push_back(c);
      std::shuffle(all.begin(), all.end(), rng);
      std::vector<int> cols(all.begin(), all.begin() + pick(rng, 0, n));
      return nra_project(std::move(cols), std::move(child));
    }
    case 2: {
      NraPtr l = random_nra(rng, schema, dom, depth - 1, max_arity);
      NraPtr r = random_nra(rng, schema, dom, depth - 1, max_arity);
      if (check_arity(l, schema) + check_arity(r, schema) > max_arity) return leaf();
      return nra_product(std::move(l), std::move(r));
    }
    case 3:
    case 4:
    case 5: {
      NraPtr l = random_nra(rng, schema, dom, depth - 1, max_arity);
      int n = check_arity(l, schema);
      NraPtr r = random_nra_with_arity(rng, schema, dom, depth - 1, n, max_arity);
      if (pick(rng, 0, 2) == 0) return nra_union(std::move(l), std::move(r));
      if (pick(rng, 0, 1) == 0) return nra_diff(std::move(l), std::move(r));
      return nra_intersect(std::move(l), std::move(r));
    }
    default: {
      NraPtr l = random_nra(rng, schema, dom, depth - 1, max_arity);
      NraPtr r = random_nra(rng, schema, dom, depth - 1, max_arity);
      int m = check_arity(l, schema);
      int n = check_arity(r, schema);
      if (m == 0 || n == 0) return nra_product(std::move(l), std::move(r));
      std::vector<std::pair<int, int>> on;
      std::vector<int> rcols;
      for (int c = 1; c <= n; ++c) rcols.push_back(c);
      std::shuffle(rcols.begin(), rcols.end(), rng);
      int len = pick(rng, 1, std::min(m, n) > 2 ? 2 : std::min(m, n));
      for (int k = 0; k < len; ++k) on.emplace_back(pick(rng, 1, m), rcols[k]);
      if (m + n - len > max_arity) return leaf();
      if (chance(rng, 0.5)) return nra_join(std::move(on), std::move(l), std::move(r));
      return nra_left_outer_join(std::move(on), std::move(l), std::move(r));
    }
  }
}

// ------------------------------------------------------------ random formulas

struct FormulaOptions {
  int max_depth = 3;
  bool allow_null_terms = true;
  bool allow_quantifiers = true;
  std::vector<std::string> vars = {"x", "y", "z"};
};

inline FoleTerm random_term(Rng& rng, const std::vector<Value>& dom,
                            const FormulaOptions& opt) {
  int r = pick(rng, 0, opt.allow_null_terms ? 5 : 4);
  if (r <= 2) return FoleTerm::variable(opt.vars[pick(rng, 0, (int)opt.vars.size() - 1)]);
  if (r <= 4) return FoleTerm::constant(dom[pick(rng, 0, (int)dom.size() - 1)]);
  return FoleTerm::null();
}

inline FormulaPtr random_formula(Rng& rng, const Schema& schema, const std::vector<Value>& dom,
                                 const FormulaOptions& opt, int depth) {
  std::vector<std::string> rels;
  for (const auto& [name, decl] : schema.relations()) rels.push_back(name);
  if (depth <= 0 || chance(rng, 0.35)) {
    if (chance(rng, 0.75) && !rels.empty()) {
      const std::string& rel = rels[pick(rng, 0, (int)rels.size() - 1)];
      int n = schema.arity(rel);
      std::vector<FoleTerm> terms;
      for (int k = 0; k < n; ++k) terms.push_back(random_term(rng, dom, opt));
      return f_atom(rel, std::move(terms));
    }
    FoleTerm a = random_term(rng, dom, opt);
    FoleTerm b = random_term(rng, dom, opt);
    if (a.kind == FoleTerm::Kind::Null || b.kind == FoleTerm::Kind::Null) return f_true();
    return f_eq(std::move(a), std::move(b));
  }
  switch (pick(rng, 0, opt.allow_quantifiers ? 5 : 3)) {
    case 0: return f_not(random_formula(rng, schema, dom, opt, depth - 1));
    case 1:
      return f_and(random_formula(rng, schema, dom, opt, depth - 1),
                   random_formula(rng, schema, dom, opt, depth - 1));
    case 2:
    case 3:
      return f_or(random_formula(rng, schema, dom, opt, depth - 1),
                  random_formula(rng, schema, dom, opt, depth - 1));
    case 4:
      return f_exists(opt.vars[pick(rng, 0, (int)opt.vars.size() - 1)],
                      random_formula(rng, schema, dom, opt, depth - 1));
    default:
      return f_forall(opt.vars[pick(rng, 0, (int)opt.vars.size() - 1)],
                      random_formula(rng, schema, dom, opt, depth - 1));
  }
}

// Replaces null terms by a constant in atoms at negative polarity, leaving a
// formula whose null-bearing atoms all occur positively.
inline FormulaPtr positivize_nulls(const FormulaPtr& f, const Value& filler, bool negative) {
  switch (f->kind) {
    case Formula::Kind::Atom: {
      if (!negative) return f;
      std::vector<FoleTerm> terms;
      for (const FoleTerm& t : f->terms)
        terms.push_back(t.kind == FoleTerm::Kind::Null ? FoleTerm::constant(filler) : t);
      return f_atom(f->pred, std::move(terms));
    }
    case Formula::Kind::Eq:
    case Formula::Kind::True:
    case Formula::Kind::False: return f;
    case Formula::Kind::Not: return f_not(positivize_nulls(f->lhs, filler, !negative));
    case Formula::Kind::And:
      return f_and(positivize_nulls(f->lhs, filler, negative),
                   positivize_nulls(f->rhs, filler, negative));
    case Formula::Kind::Or:
      return f_or(positivize_nulls(f->lhs, filler, negative),
                  positivize_nulls(f->rhs, filler, negative));
    case Formula::Kind::Exists:
      return f_exists(f->var, positivize_nulls(f->lhs, filler, negative));
    case Formula::Kind::Forall:
      return f_forall(f->var, positivize_nulls(f->lhs, filler, negative));
  }
  throw std::logic_error("unreachable");
}

// Total assignment over the free variables.
inline Assignment random_assignment(Rng& rng, const FormulaPtr& f, const std::vector<Value>& dom) {
  Assignment a;
  for (const std::string& x : free_vars(f)) a[x] = dom[pick(rng, 0, (int)dom.size() - 1)];
  return a;
}

}  // namespace testsupport

#endif
