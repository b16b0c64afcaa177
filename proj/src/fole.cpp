#include "nullrel/fole.hpp"

#include <algorithm>
#include <functional>

namespace nullrel {

FoleTerm FoleTerm::constant(Value v) {
  if (v.is_null()) throw FoleError("the null marker is not a constant");
  FoleTerm t;
  t.kind = Kind::Const;
  t.value = std::move(v);
  return t;
}
FoleTerm FoleTerm::variable(std::string name) {
  FoleTerm t;
  t.kind = Kind::Var;
  t.var = std::move(name);
  return t;
}
FoleTerm FoleTerm::null() { return FoleTerm{}; }

namespace {
std::shared_ptr<Formula> mk(Formula::Kind k) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  return f;
}
}  // namespace

FormulaPtr f_atom(std::string pred, std::vector<FoleTerm> terms) {
  auto f = mk(Formula::Kind::Atom);
  f->pred = std::move(pred);
  f->terms = std::move(terms);
  return f;
}

FormulaPtr f_atom_decomposed(std::string pred, std::vector<int> positions,
                             std::vector<FoleTerm> terms) {
  if (positions.size() != terms.size())
    throw FoleError("decomposed atom arity does not match its position set");
  if (!std::is_sorted(positions.begin(), positions.end()) ||
      std::adjacent_find(positions.begin(), positions.end()) != positions.end())
    throw FoleError("decomposed atom positions must be strictly ascending");
  for (const FoleTerm& t : terms)
    if (t.kind == FoleTerm::Kind::Null)
      throw FoleError("decomposed atoms cannot contain the null term");
  auto f = mk(Formula::Kind::Atom);
  f->pred = std::move(pred);
  f->positions = std::move(positions);
  f->terms = std::move(terms);
  return f;
}

FormulaPtr f_eq(FoleTerm a, FoleTerm b) {
  if (a.kind == FoleTerm::Kind::Null || b.kind == FoleTerm::Kind::Null)
    throw FoleError("equality arguments must be terms different from the null marker");
  auto f = mk(Formula::Kind::Eq);
  f->t1 = std::move(a);
  f->t2 = std::move(b);
  return f;
}

FormulaPtr f_not(FormulaPtr g) {
  auto f = mk(Formula::Kind::Not);
  f->lhs = std::move(g);
  return f;
}
FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  auto f = mk(Formula::Kind::And);
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  auto f = mk(Formula::Kind::Or);
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}
FormulaPtr f_exists(std::string var, FormulaPtr g) {
  auto f = mk(Formula::Kind::Exists);
  f->var = std::move(var);
  f->lhs = std::move(g);
  return f;
}
FormulaPtr f_forall(std::string var, FormulaPtr g) {
  auto f = mk(Formula::Kind::Forall);
  f->var = std::move(var);
  f->lhs = std::move(g);
  return f;
}
FormulaPtr f_true() { return mk(Formula::Kind::True); }
FormulaPtr f_false() { return mk(Formula::Kind::False); }

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::Atom:
      return a->pred == b->pred && a->positions == b->positions && a->terms == b->terms;
    case Formula::Kind::Eq: return a->t1 == b->t1 && a->t2 == b->t2;
    case Formula::Kind::Not: return formula_equal(a->lhs, b->lhs);
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return formula_equal(a->lhs, b->lhs) && formula_equal(a->rhs, b->rhs);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return a->var == b->var && formula_equal(a->lhs, b->lhs);
    case Formula::Kind::True:
    case Formula::Kind::False: return true;
  }
  return false;
}

namespace {

using NameMap = std::map<std::string, int>;

bool alpha_term(const FoleTerm& a, const FoleTerm& b, const NameMap& ma, const NameMap& mb) {
  if (a.kind != b.kind) return false;
  if (a.kind == FoleTerm::Kind::Const) return a.value == b.value;
  if (a.kind != FoleTerm::Kind::Var) return true;
  auto ia = ma.find(a.var);
  auto ib = mb.find(b.var);
  if ((ia == ma.end()) != (ib == mb.end())) return false;
  if (ia == ma.end()) return a.var == b.var;  // both free
  return ia->second == ib->second;
}

bool alpha_impl(const FormulaPtr& a, const FormulaPtr& b, NameMap ma, NameMap mb, int depth) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::Atom: {
      if (a->pred != b->pred || a->positions != b->positions ||
          a->terms.size() != b->terms.size())
        return false;
      for (std::size_t k = 0; k < a->terms.size(); ++k)
        if (!alpha_term(a->terms[k], b->terms[k], ma, mb)) return false;
      return true;
    }
    case Formula::Kind::Eq:
      return alpha_term(a->t1, b->t1, ma, mb) && alpha_term(a->t2, b->t2, ma, mb);
    case Formula::Kind::True:
    case Formula::Kind::False: return true;
    case Formula::Kind::Not: return alpha_impl(a->lhs, b->lhs, ma, mb, depth);
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return alpha_impl(a->lhs, b->lhs, ma, mb, depth) &&
             alpha_impl(a->rhs, b->rhs, ma, mb, depth);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      ma[a->var] = depth;
      mb[b->var] = depth;
      return alpha_impl(a->lhs, b->lhs, std::move(ma), std::move(mb), depth + 1);
    }
  }
  return false;
}

}  // namespace

bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b) {
  return alpha_impl(a, b, {}, {}, 0);
}

std::size_t formula_size(const FormulaPtr& f) {
  if (!f) return 0;
  return 1 + formula_size(f->lhs) + formula_size(f->rhs);
}

namespace {

std::string term_str(const FoleTerm& t) {
  switch (t.kind) {
    case FoleTerm::Kind::Const: return t.value.to_string();
    case FoleTerm::Kind::Var: return t.var;
    case FoleTerm::Kind::Null: return "NULL";
  }
  return "";
}

// Precedence levels: 0 or, 1 and, 2 unary operand. A quantifier body
// extends to the end of the input, so quantified formulas print bare only in
// tail position.
std::string fmt(const FormulaPtr& f, int level, bool tail) {
  switch (f->kind) {
    case Formula::Kind::Atom: {
      std::string s = f->pred;
      if (f->positions) {
        s += "~{";
        for (std::size_t k = 0; k < f->positions->size(); ++k) {
          if (k) s += ",";
          s += std::to_string((*f->positions)[k]);
        }
        s += "}";
        if (f->terms.empty()) return s;
      }
      s += "(";
      for (std::size_t k = 0; k < f->terms.size(); ++k) {
        if (k) s += ",";
        s += term_str(f->terms[k]);
      }
      return s + ")";
    }
    case Formula::Kind::Eq: return term_str(f->t1) + " = " + term_str(f->t2);
    case Formula::Kind::True: return "true";
    case Formula::Kind::False: return "false";
    case Formula::Kind::Not: return "not " + fmt(f->lhs, 2, tail);
    case Formula::Kind::And: {
      std::string s = fmt(f->lhs, 1, false) + " and " + fmt(f->rhs, 2, level < 2 && tail);
      return level < 2 ? s : "(" + s + ")";
    }
    case Formula::Kind::Or: {
      std::string s = fmt(f->lhs, 0, false) + " or " + fmt(f->rhs, 1, level < 1 && tail);
      return level < 1 ? s : "(" + s + ")";
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      // merge adjacent binders of the same kind: exists x,y. f
      std::string vars = f->var;
      FormulaPtr body = f->lhs;
      while (body->kind == f->kind) {
        vars += "," + body->var;
        body = body->lhs;
      }
      std::string kw = f->kind == Formula::Kind::Exists ? "exists " : "forall ";
      std::string s = kw + vars + ". " + fmt(body, 0, true);
      return tail ? s : "(" + s + ")";
    }
  }
  return "";
}

}  // namespace

std::string to_string(const FormulaPtr& f) { return fmt(f, 0, true); }

namespace {

void collect_free(const FormulaPtr& f, std::set<std::string>& bound,
                  std::vector<std::string>& order, std::set<std::string>& seen) {
  auto visit_term = [&](const FoleTerm& t) {
    if (t.kind == FoleTerm::Kind::Var && !bound.count(t.var) && seen.insert(t.var).second)
      order.push_back(t.var);
  };
  if (!f) return;
  switch (f->kind) {
    case Formula::Kind::Atom:
      for (const FoleTerm& t : f->terms) visit_term(t);
      return;
    case Formula::Kind::Eq:
      visit_term(f->t1);
      visit_term(f->t2);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool fresh = bound.insert(f->var).second;
      collect_free(f->lhs, bound, order, seen);
      if (fresh) bound.erase(f->var);
      return;
    }
    default:
      collect_free(f->lhs, bound, order, seen);
      collect_free(f->rhs, bound, order, seen);
  }
}

}  // namespace

std::vector<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> bound, seen;
  std::vector<std::string> order;
  collect_free(f, bound, order, seen);
  return order;
}

std::set<Value> formula_constants(const FormulaPtr& f) {
  std::set<Value> out;
  std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& g) {
    if (!g) return;
    for (const FoleTerm& t : g->terms)
      if (t.kind == FoleTerm::Kind::Const) out.insert(t.value);
    if (g->kind == Formula::Kind::Eq) {
      if (g->t1.kind == FoleTerm::Kind::Const) out.insert(g->t1.value);
      if (g->t2.kind == FoleTerm::Kind::Const) out.insert(g->t2.value);
    }
    walk(g->lhs);
    walk(g->rhs);
  };
  walk(f);
  return out;
}

namespace {

struct Evaluator {
  const InstancePartial& inst;
  const std::set<Value>& domain;

  bool eval(const FormulaPtr& f, Assignment& a) const {
    switch (f->kind) {
      case Formula::Kind::Atom: {
        if (f->positions)
          throw FoleError("atom over the decomposed signature in a FOLe evaluation");
        int n = inst.schema.arity(f->pred);
        if (static_cast<int>(f->terms.size()) != n)
          throw FoleError("atom arity mismatch for " + f->pred);
        PartialTuple tau;
        tau.arity = n;
        for (int k = 0; k < n; ++k) {
          const FoleTerm& t = f->terms[k];
          if (t.kind == FoleTerm::Kind::Const) {
            tau.cells.emplace(k + 1, t.value);
          } else if (t.kind == FoleTerm::Kind::Var) {
            auto it = a.find(t.var);
            if (it == a.end()) throw FoleError("unbound variable " + t.var);
            tau.cells.emplace(k + 1, it->second);
          }
          // the null term leaves the position undefined
        }
        return inst.at(f->pred).count(tau) != 0;
      }
      case Formula::Kind::Eq: {
        return term_value(f->t1, a) == term_value(f->t2, a);
      }
      case Formula::Kind::Not: return !eval(f->lhs, a);
      case Formula::Kind::And: return eval(f->lhs, a) && eval(f->rhs, a);
      case Formula::Kind::Or: return eval(f->lhs, a) || eval(f->rhs, a);
      case Formula::Kind::Exists: {
        for (const Value& o : domain) {
          auto saved = set_var(a, f->var, o);
          bool ok = eval(f->lhs, a);
          restore_var(a, f->var, saved);
          if (ok) return true;
        }
        return false;
      }
      case Formula::Kind::Forall: {
        for (const Value& o : domain) {
          auto saved = set_var(a, f->var, o);
          bool ok = eval(f->lhs, a);
          restore_var(a, f->var, saved);
          if (!ok) return false;
        }
        return true;
      }
      case Formula::Kind::True: return true;
      case Formula::Kind::False: return false;
    }
    throw FoleError("unreachable");
  }

  Value term_value(const FoleTerm& t, const Assignment& a) const {
    if (t.kind == FoleTerm::Kind::Const) return t.value;
    if (t.kind == FoleTerm::Kind::Var) {
      auto it = a.find(t.var);
      if (it == a.end()) throw FoleError("unbound variable " + t.var);
      return it->second;
    }
    throw FoleError("the null term cannot appear in an equality");
  }

  static std::optional<Value> set_var(Assignment& a, const std::string& x, const Value& o) {
    auto it = a.find(x);
    std::optional<Value> saved;
    if (it != a.end()) {
      saved = it->second;
      it->second = o;
    } else {
      a.emplace(x, o);
    }
    return saved;
  }
  static void restore_var(Assignment& a, const std::string& x, const std::optional<Value>& saved) {
    if (saved)
      a[x] = *saved;
    else
      a.erase(x);
  }
};

}  // namespace

bool satisfies(const InstancePartial& inst, const Assignment& a, const FormulaPtr& f,
               const std::set<Value>& domain) {
  for (const std::string& x : free_vars(f))
    if (!a.count(x)) throw FoleError("assignment does not bind free variable " + x);
  Assignment work = a;
  return Evaluator{inst, domain}.eval(f, work);
}

std::set<Value> evaluation_domain(const FormulaPtr& q, const InstancePartial& inst) {
  std::set<Value> d = active_domain(inst);
  for (const Value& v : formula_constants(q)) d.insert(v);
  if (d.empty()) d.insert(Value::integer(0));  // interpretation domains are nonempty
  return d;
}

Relation answer_set(const FormulaPtr& q, const InstancePartial& inst) {
  if (!is_safe_range(q))
    throw NotSafeRangeError("query is not safe-range; its answers would be domain dependent");
  std::vector<std::string> fv = free_vars(q);
  std::set<Value> domain = evaluation_domain(q, inst);
  std::vector<Value> dom(domain.begin(), domain.end());

  Relation out;
  std::vector<std::size_t> idx(fv.size(), 0);
  Assignment a;
  while (true) {
    a.clear();
    TotalTuple t;
    t.reserve(fv.size());
    for (std::size_t k = 0; k < fv.size(); ++k) {
      a[fv[k]] = dom[idx[k]];
      t.push_back(dom[idx[k]]);
    }
    if (satisfies(inst, a, q, domain)) out.insert(std::move(t));
    // advance the odometer
    std::size_t k = 0;
    for (; k < idx.size(); ++k) {
      if (++idx[k] < dom.size()) break;
      idx[k] = 0;
    }
    if (k == idx.size()) break;
  }
  return out;
}

}  // namespace nullrel
