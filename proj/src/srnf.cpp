#include <algorithm>
#include <functional>

#include "nullrel/fole.hpp"

namespace nullrel {

namespace {

void collect_names(const FormulaPtr& f, std::set<std::string>& names) {
  if (!f) return;
  for (const FoleTerm& t : f->terms)
    if (t.kind == FoleTerm::Kind::Var) names.insert(t.var);
  if (f->kind == Formula::Kind::Eq) {
    if (f->t1.kind == FoleTerm::Kind::Var) names.insert(f->t1.var);
    if (f->t2.kind == FoleTerm::Kind::Var) names.insert(f->t2.var);
  }
  if (!f->var.empty()) names.insert(f->var);
  collect_names(f->lhs, names);
  collect_names(f->rhs, names);
}

struct FreshNames {
  std::set<std::string> used;
  int counter = 1;

  std::string fresh() {
    while (true) {
      std::string name = "v" + std::to_string(counter++);
      if (used.insert(name).second) return name;
    }
  }
};

FoleTerm rename_term(const FoleTerm& t, const std::map<std::string, std::string>& ren) {
  if (t.kind != FoleTerm::Kind::Var) return t;
  auto it = ren.find(t.var);
  return it == ren.end() ? t : FoleTerm::variable(it->second);
}

// Renames bound variables so no binder shares a name with another binder or
// with a free variable. Non-colliding names are kept.
FormulaPtr rename_apart(const FormulaPtr& f, std::map<std::string, std::string> ren,
                        std::set<std::string>& binders_seen, FreshNames& fresh) {
  switch (f->kind) {
    case Formula::Kind::Atom: {
      std::vector<FoleTerm> ts;
      ts.reserve(f->terms.size());
      for (const FoleTerm& t : f->terms) ts.push_back(rename_term(t, ren));
      return f->positions ? f_atom_decomposed(f->pred, *f->positions, std::move(ts))
                          : f_atom(f->pred, std::move(ts));
    }
    case Formula::Kind::Eq: return f_eq(rename_term(f->t1, ren), rename_term(f->t2, ren));
    case Formula::Kind::True:
    case Formula::Kind::False: return f;
    case Formula::Kind::Not:
      return f_not(rename_apart(f->lhs, ren, binders_seen, fresh));
    case Formula::Kind::And:
      return f_and(rename_apart(f->lhs, ren, binders_seen, fresh),
                   rename_apart(f->rhs, ren, binders_seen, fresh));
    case Formula::Kind::Or:
      return f_or(rename_apart(f->lhs, ren, binders_seen, fresh),
                  rename_apart(f->rhs, ren, binders_seen, fresh));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      // binders_seen starts out holding the free variables, so a collision
      // with either an earlier binder or a free variable forces a fresh name
      std::string name = f->var;
      if (!binders_seen.insert(name).second) {
        name = fresh.fresh();
        binders_seen.insert(name);
      }
      ren[f->var] = name;
      FormulaPtr body = rename_apart(f->lhs, ren, binders_seen, fresh);
      return f->kind == Formula::Kind::Exists ? f_exists(name, std::move(body))
                                              : f_forall(name, std::move(body));
    }
  }
  throw FoleError("unreachable");
}

bool occurs_free(const FormulaPtr& f, const std::string& x) {
  for (const std::string& v : free_vars(f))
    if (v == x) return true;
  return false;
}

void flatten(const FormulaPtr& f, Formula::Kind k, std::vector<FormulaPtr>& out) {
  if (f->kind == k) {
    flatten(f->lhs, k, out);
    flatten(f->rhs, k, out);
  } else {
    out.push_back(f);
  }
}

FormulaPtr rebuild(Formula::Kind k, const std::vector<FormulaPtr>& parts) {
  FormulaPtr out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i)
    out = k == Formula::Kind::And ? f_and(out, parts[i]) : f_or(out, parts[i]);
  return out;
}

// Minimizes the scope of an existential binder: vacuous binders vanish,
// the binder distributes over disjunction, moves onto the conjuncts that
// mention the variable, and commutes with inner existentials when that
// lets it sink further.
FormulaPtr mini_exists(const std::string& x, const FormulaPtr& body) {
  if (!occurs_free(body, x)) return body;
  if (body->kind == Formula::Kind::Or) {
    std::vector<FormulaPtr> parts;
    flatten(body, Formula::Kind::Or, parts);
    std::vector<FormulaPtr> mapped;
    mapped.reserve(parts.size());
    for (const FormulaPtr& p : parts) mapped.push_back(mini_exists(x, p));
    return rebuild(Formula::Kind::Or, mapped);
  }
  if (body->kind == Formula::Kind::And) {
    std::vector<FormulaPtr> parts;
    flatten(body, Formula::Kind::And, parts);
    std::vector<FormulaPtr> with_x, result;
    std::size_t insert_at = parts.size();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (occurs_free(parts[i], x)) {
        if (with_x.empty()) insert_at = i;
        with_x.push_back(parts[i]);
      }
    }
    if (with_x.size() < parts.size()) {
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i == insert_at) result.push_back(mini_exists(x, rebuild(Formula::Kind::And, with_x)));
        if (!occurs_free(parts[i], x)) result.push_back(parts[i]);
      }
      if (insert_at == parts.size()) result.push_back(mini_exists(x, rebuild(Formula::Kind::And, with_x)));
      return rebuild(Formula::Kind::And, result);
    }
    return f_exists(x, body);
  }
  if (body->kind == Formula::Kind::Exists) {
    FormulaPtr pushed = mini_exists(x, body->lhs);
    bool helped = !(pushed->kind == Formula::Kind::Exists && pushed->var == x &&
                    formula_equal(pushed->lhs, body->lhs));
    if (helped) return f_exists(body->var, pushed);
  }
  return f_exists(x, body);
}

FormulaPtr push_not(const FormulaPtr& f);

FormulaPtr transform(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::Eq:
    case Formula::Kind::True:
    case Formula::Kind::False: return f;
    case Formula::Kind::Not: return push_not(transform(f->lhs));
    case Formula::Kind::And: return f_and(transform(f->lhs), transform(f->rhs));
    case Formula::Kind::Or: return f_or(transform(f->lhs), transform(f->rhs));
    case Formula::Kind::Exists: return mini_exists(f->var, transform(f->lhs));
    case Formula::Kind::Forall:
      // forall x. f == not exists x. not f
      return push_not(mini_exists(f->var, push_not(transform(f->lhs))));
  }
  throw FoleError("unreachable");
}

// Negation of an SRNF formula, kept in SRNF: double negations cancel and
// negation distributes over disjunction only.
FormulaPtr push_not(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::True: return f_false();
    case Formula::Kind::False: return f_true();
    case Formula::Kind::Not: return f->lhs;
    case Formula::Kind::Or: return f_and(push_not(f->lhs), push_not(f->rhs));
    default: return f_not(f);
  }
}

}  // namespace

FormulaPtr to_srnf(const FormulaPtr& f) {
  FreshNames fresh;
  collect_names(f, fresh.used);
  std::set<std::string> binders_seen;
  for (const std::string& v : free_vars(f)) binders_seen.insert(v);
  FormulaPtr renamed = rename_apart(f, {}, binders_seen, fresh);
  return transform(renamed);
}

namespace {

using RR = std::optional<std::set<std::string>>;

RR rr(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Atom: {
      std::set<std::string> out;
      for (const FoleTerm& t : f->terms)
        if (t.kind == FoleTerm::Kind::Var) out.insert(t.var);
      return out;
    }
    case Formula::Kind::Eq: {
      std::set<std::string> out;
      bool v1 = f->t1.kind == FoleTerm::Kind::Var;
      bool v2 = f->t2.kind == FoleTerm::Kind::Var;
      if (v1 && !v2) out.insert(f->t1.var);
      if (v2 && !v1) out.insert(f->t2.var);
      // x = y restricts nothing on its own; conjunction propagates it
      return out;
    }
    case Formula::Kind::True:
    case Formula::Kind::False: return std::set<std::string>{};
    case Formula::Kind::Not: {
      RR inner = rr(f->lhs);
      if (!inner) return std::nullopt;
      return std::set<std::string>{};
    }
    case Formula::Kind::And: {
      std::vector<FormulaPtr> parts;
      flatten(f, Formula::Kind::And, parts);
      std::set<std::string> out;
      for (const FormulaPtr& p : parts) {
        RR r = rr(p);
        if (!r) return std::nullopt;
        out.insert(r->begin(), r->end());
      }
      // propagate x = y equalities to a fixpoint
      bool changed = true;
      while (changed) {
        changed = false;
        for (const FormulaPtr& p : parts) {
          if (p->kind != Formula::Kind::Eq) continue;
          if (p->t1.kind != FoleTerm::Kind::Var || p->t2.kind != FoleTerm::Kind::Var) continue;
          bool has1 = out.count(p->t1.var), has2 = out.count(p->t2.var);
          if (has1 != has2) {
            out.insert(p->t1.var);
            out.insert(p->t2.var);
            changed = true;
          }
        }
      }
      return out;
    }
    case Formula::Kind::Or: {
      RR l = rr(f->lhs);
      RR r = rr(f->rhs);
      if (!l || !r) return std::nullopt;
      std::set<std::string> out;
      std::set_intersection(l->begin(), l->end(), r->begin(), r->end(),
                            std::inserter(out, out.begin()));
      return out;
    }
    case Formula::Kind::Exists: {
      RR body = rr(f->lhs);
      if (!body || !body->count(f->var)) return std::nullopt;
      body->erase(f->var);
      return body;
    }
    case Formula::Kind::Forall:
      throw FoleError("range restriction requires safe-range normal form");
  }
  throw FoleError("unreachable");
}

}  // namespace

std::optional<std::set<std::string>> range_restriction(const FormulaPtr& srnf) {
  return rr(srnf);
}

bool is_safe_range(const FormulaPtr& f) {
  RR r = rr(to_srnf(f));
  if (!r) return false;
  std::vector<std::string> fv = free_vars(f);
  return *r == std::set<std::string>(fv.begin(), fv.end());
}

namespace {

FormulaPtr rewrite_atom_no_info(const FormulaPtr& atom, FreshNames& fresh) {
  std::vector<int> null_pos;
  for (std::size_t k = 0; k < atom->terms.size(); ++k)
    if (atom->terms[k].kind == FoleTerm::Kind::Null) null_pos.push_back(static_cast<int>(k));
  if (null_pos.empty()) return atom;

  FormulaPtr out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << null_pos.size()); ++mask) {
    std::vector<FoleTerm> terms = atom->terms;
    std::vector<std::string> vars;
    int local = fresh.counter;  // fresh names restart per disjunct
    for (std::size_t b = 0; b < null_pos.size(); ++b) {
      if (mask & (std::uint64_t{1} << b)) {
        std::string name;
        do {
          name = "v" + std::to_string(local++);
        } while (fresh.used.count(name));
        vars.push_back(name);
        terms[null_pos[b]] = FoleTerm::variable(name);
      }
    }
    FormulaPtr d = f_atom(atom->pred, std::move(terms));
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) d = f_exists(*it, std::move(d));
    out = out ? f_or(std::move(out), std::move(d)) : std::move(d);
  }
  return out;
}

FormulaPtr no_info_walk(const FormulaPtr& f, FreshNames& fresh) {
  switch (f->kind) {
    case Formula::Kind::Atom:
      if (f->positions) return f;
      return rewrite_atom_no_info(f, fresh);
    case Formula::Kind::Eq:
    case Formula::Kind::True:
    case Formula::Kind::False: return f;
    case Formula::Kind::Not: return f_not(no_info_walk(f->lhs, fresh));
    case Formula::Kind::And: return f_and(no_info_walk(f->lhs, fresh), no_info_walk(f->rhs, fresh));
    case Formula::Kind::Or: return f_or(no_info_walk(f->lhs, fresh), no_info_walk(f->rhs, fresh));
    case Formula::Kind::Exists: return f_exists(f->var, no_info_walk(f->lhs, fresh));
    case Formula::Kind::Forall: return f_forall(f->var, no_info_walk(f->lhs, fresh));
  }
  throw FoleError("unreachable");
}

}  // namespace

FormulaPtr no_info_rewrite(const FormulaPtr& f) {
  FreshNames fresh;
  collect_names(f, fresh.used);
  return no_info_walk(f, fresh);
}

}  // namespace nullrel
