// Safe-range calculus to algebra, via safe-range normal form and relational
// algebra normal form: every subformula is made self-contained (its range
// restriction equals its free variables) by distributing conjuncts into
// disjunctions, pulling conjuncts under existentials and guarding negations,
// after which a syntax-directed translation produces one expression per
// subformula whose columns are its free variables in order of appearance.

#include <algorithm>
#include <map>

#include "nullrel/translate.hpp"

namespace nullrel {

namespace {

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

bool self_contained(const FormulaPtr& f) {
  auto r = range_restriction(f);
  if (!r) return false;
  std::vector<std::string> fv = free_vars(f);
  return *r == std::set<std::string>(fv.begin(), fv.end());
}

struct RanfCtx {
  std::size_t budget = translation_node_budget();
  void check(const FormulaPtr& f) {
    if (formula_size(f) > budget)
      throw TranslateError("normal form rewriting exceeded the node budget");
  }
};

FormulaPtr to_ranf(const FormulaPtr& f, RanfCtx& ctx) {
  switch (f->kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::Eq:
    case Formula::Kind::True:
    case Formula::Kind::False: return f;
    case Formula::Kind::Not: return f_not(to_ranf(f->lhs, ctx));
    case Formula::Kind::Or: return f_or(to_ranf(f->lhs, ctx), to_ranf(f->rhs, ctx));
    case Formula::Kind::Exists: return f_exists(f->var, to_ranf(f->lhs, ctx));
    case Formula::Kind::Forall:
      throw TranslateError("universal quantifier survived normal form");
    case Formula::Kind::And: {
      std::vector<FormulaPtr> parts;
      flatten(f, Formula::Kind::And, parts);
      // distribution and quantifier pulling come first: they bring outer
      // restricting conjuncts into scope, so that the negation guards built
      // afterwards are complete
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const FormulaPtr& d = parts[i];
        if (d->kind == Formula::Kind::Or && !self_contained(d)) {
          // push the siblings into the disjunction
          std::vector<FormulaPtr> disjuncts, mapped;
          flatten(d, Formula::Kind::Or, disjuncts);
          for (const FormulaPtr& dj : disjuncts) {
            std::vector<FormulaPtr> conj;
            for (std::size_t k = 0; k < parts.size(); ++k)
              conj.push_back(k == i ? dj : parts[k]);
            mapped.push_back(rebuild(Formula::Kind::And, conj));
          }
          FormulaPtr pushed = rebuild(Formula::Kind::Or, mapped);
          ctx.check(pushed);
          return to_ranf(pushed, ctx);
        }
        if (d->kind == Formula::Kind::Exists && !self_contained(d)) {
          // pull the siblings under the quantifier (variables are apart)
          std::vector<FormulaPtr> conj;
          for (std::size_t k = 0; k < parts.size(); ++k)
            conj.push_back(k == i ? d->lhs : parts[k]);
          FormulaPtr pulled = f_exists(d->var, rebuild(Formula::Kind::And, conj));
          ctx.check(pulled);
          return to_ranf(pulled, ctx);
        }
      }
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const FormulaPtr& d = parts[i];
        if (d->kind == Formula::Kind::Not && !self_contained(d->lhs)) {
          // guard the negation with the positive siblings
          std::vector<FormulaPtr> guard;
          for (std::size_t k = 0; k < parts.size(); ++k)
            if (k != i && parts[k]->kind != Formula::Kind::Not) guard.push_back(parts[k]);
          if (guard.empty())
            throw TranslateError("negated subformula cannot be guarded; formula unsafe");
          guard.push_back(d->lhs);
          FormulaPtr guarded_body = rebuild(Formula::Kind::And, guard);
          if (!self_contained(guarded_body))
            throw TranslateError("negation guard is incomplete; formula unsafe");
          std::vector<FormulaPtr> conj = parts;
          conj[i] = f_not(guarded_body);
          FormulaPtr guarded = rebuild(Formula::Kind::And, conj);
          ctx.check(guarded);
          return to_ranf(guarded, ctx);
        }
      }
      std::vector<FormulaPtr> mapped;
      mapped.reserve(parts.size());
      for (const FormulaPtr& p : parts) mapped.push_back(to_ranf(p, ctx));
      return rebuild(Formula::Kind::And, mapped);
    }
  }
  throw TranslateError("unreachable");
}

// Expression over the decomposed signature together with its column names.
struct Translated {
  NraPtr expr;
  std::vector<std::string> cols;

  int width() const { return static_cast<int>(cols.size()); }
  std::optional<int> col(const std::string& name) const {
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (cols[k] == name) return static_cast<int>(k) + 1;
    return std::nullopt;
  }
};

// Arity-zero expression that always evaluates to the zero-tuple.
NraPtr unit_expr() { return nra_project({}, nra_singleton(Value::integer(0))); }

Translated reorder(Translated t, const std::vector<std::string>& want) {
  if (t.cols == want) return t;
  std::vector<int> idx;
  idx.reserve(want.size());
  for (const std::string& name : want) {
    auto pos = t.col(name);
    if (!pos) throw TranslateError("internal: missing column " + name);
    idx.push_back(*pos);
  }
  return {nra_project(std::move(idx), std::move(t.expr)), want};
}

Translated translate(const FormulaPtr& f);

Translated translate_atom(const FormulaPtr& f) {
  if (!f->positions)
    throw TranslateError("calculus-to-algebra translation expects decomposed atoms");
  NraPtr e = nra_relation(decomposed_rel_name(f->pred, *f->positions));
  // constants become selections, repeated variables equality selections
  std::map<std::string, int> first;
  std::vector<std::string> cols;
  std::vector<int> keep;
  for (std::size_t k = 0; k < f->terms.size(); ++k) {
    const FoleTerm& t = f->terms[k];
    int pos = static_cast<int>(k) + 1;
    if (t.kind == FoleTerm::Kind::Const) {
      e = nra_select(cond_eq_const(pos, t.value), std::move(e));
    } else {
      auto [it, fresh] = first.emplace(t.var, pos);
      if (fresh) {
        cols.push_back(t.var);
        keep.push_back(pos);
      } else {
        e = nra_select(cond_eq_cols(it->second, pos), std::move(e));
      }
    }
  }
  if (static_cast<int>(keep.size()) != static_cast<int>(f->terms.size()))
    return {nra_project(std::move(keep), std::move(e)), std::move(cols)};
  return {std::move(e), std::move(cols)};
}

// Natural join on shared column names.
Translated join(Translated l, Translated r) {
  int w = l.width();
  NraPtr e = nra_product(l.expr, r.expr);
  std::vector<int> keep;
  for (int c = 1; c <= w; ++c) keep.push_back(c);
  std::vector<std::string> cols = l.cols;
  for (int c = 0; c < r.width(); ++c) {
    const std::string& name = r.cols[c];
    if (auto lp = l.col(name)) {
      e = nra_select(cond_eq_cols(*lp, w + c + 1), std::move(e));
    } else {
      keep.push_back(w + c + 1);
      cols.push_back(name);
    }
  }
  if (static_cast<int>(keep.size()) != w + r.width())
    e = nra_project(std::move(keep), std::move(e));
  return {std::move(e), std::move(cols)};
}

// Rows of l whose projection onto the columns of r has no match in r.
Translated anti_join(Translated l, const Translated& r) {
  int w = l.width();
  NraPtr matched = nra_product(l.expr, r.expr);
  for (int c = 0; c < r.width(); ++c) {
    auto lp = l.col(r.cols[c]);
    if (!lp) throw TranslateError("internal: negation column escapes its guard");
    matched = nra_select(cond_eq_cols(*lp, w + c + 1), std::move(matched));
  }
  std::vector<int> keep;
  for (int c = 1; c <= w; ++c) keep.push_back(c);
  matched = nra_project(std::move(keep), std::move(matched));
  return {nra_diff(l.expr, std::move(matched)), l.cols};
}

Translated translate_and(const FormulaPtr& f) {
  std::vector<FormulaPtr> parts;
  flatten(f, Formula::Kind::And, parts);

  std::vector<FormulaPtr> equalities, negations;
  Translated acc{unit_expr(), {}};
  bool have_positive = false;
  for (const FormulaPtr& p : parts) {
    if (p->kind == Formula::Kind::Eq) {
      equalities.push_back(p);
    } else if (p->kind == Formula::Kind::Not) {
      negations.push_back(p);
    } else {
      Translated tp = translate(p);
      acc = have_positive ? join(std::move(acc), std::move(tp)) : std::move(tp);
      have_positive = true;
    }
  }
  // equalities: selections when both sides are present, otherwise extensions
  std::vector<FormulaPtr> pending = equalities;
  while (!pending.empty()) {
    bool progress = false;
    std::vector<FormulaPtr> next;
    for (const FormulaPtr& eq : pending) {
      const FoleTerm& a = eq->t1;
      const FoleTerm& b = eq->t2;
      bool va = a.kind == FoleTerm::Kind::Var, vb = b.kind == FoleTerm::Kind::Var;
      if (!va && !vb) {
        if (!(a.value == b.value)) acc.expr = nra_diff(acc.expr, acc.expr);
        progress = true;
        continue;
      }
      if (va != vb) {
        const std::string& x = va ? a.var : b.var;
        const Value& c = va ? b.value : a.value;
        if (auto pos = acc.col(x)) {
          acc.expr = nra_select(cond_eq_const(*pos, c), std::move(acc.expr));
        } else {
          acc.expr = nra_product(std::move(acc.expr), nra_singleton(c));
          acc.cols.push_back(x);
        }
        progress = true;
        continue;
      }
      // variable = variable
      auto pa = acc.col(a.var);
      auto pb = acc.col(b.var);
      if (pa && pb) {
        acc.expr = nra_select(cond_eq_cols(*pa, *pb), std::move(acc.expr));
        progress = true;
      } else if (pa || pb) {
        int src = pa ? *pa : *pb;
        const std::string& fresh_name = pa ? b.var : a.var;
        // append a copy of the source column: null-free here, so matching
        // the row against its own projected value duplicates it exactly
        int w = acc.width();
        NraPtr copy = nra_product(acc.expr, nra_project({src}, acc.expr));
        acc.expr = nra_select(cond_eq_cols(src, w + 1), std::move(copy));
        acc.cols.push_back(fresh_name);
        progress = true;
      } else {
        next.push_back(eq);
      }
    }
    if (!progress && !next.empty())
      throw TranslateError("equalities do not range-restrict; formula unsafe");
    pending = std::move(next);
  }

  for (const FormulaPtr& n : negations) {
    Translated tn = translate(n->lhs);
    acc = anti_join(std::move(acc), tn);
  }
  return reorder(std::move(acc), free_vars(f));
}

Translated translate(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Atom: return translate_atom(f);
    case Formula::Kind::True: return {unit_expr(), {}};
    case Formula::Kind::False: return {nra_diff(unit_expr(), unit_expr()), {}};
    case Formula::Kind::Eq: {
      bool va = f->t1.kind == FoleTerm::Kind::Var, vb = f->t2.kind == FoleTerm::Kind::Var;
      if (va && vb) throw TranslateError("bare variable equality is not self-contained");
      if (!va && !vb)
        return f->t1.value == f->t2.value
                   ? Translated{unit_expr(), {}}
                   : Translated{nra_diff(unit_expr(), unit_expr()), {}};
      const std::string& x = va ? f->t1.var : f->t2.var;
      const Value& c = va ? f->t2.value : f->t1.value;
      return {nra_singleton(c), {x}};
    }
    case Formula::Kind::And: return translate_and(f);
    case Formula::Kind::Or: {
      std::vector<FormulaPtr> parts;
      flatten(f, Formula::Kind::Or, parts);
      std::vector<std::string> want = free_vars(f);
      Translated acc = reorder(translate(parts[0]), want);
      for (std::size_t i = 1; i < parts.size(); ++i) {
        Translated ti = reorder(translate(parts[i]), want);
        acc.expr = nra_union(std::move(acc.expr), std::move(ti.expr));
      }
      return acc;
    }
    case Formula::Kind::Exists: {
      Translated tb = translate(f->lhs);
      std::vector<int> keep;
      std::vector<std::string> cols;
      for (int c = 0; c < tb.width(); ++c) {
        if (tb.cols[c] != f->var) {
          keep.push_back(c + 1);
          cols.push_back(tb.cols[c]);
        }
      }
      if (static_cast<int>(keep.size()) == tb.width())
        throw TranslateError("internal: quantified variable has no column");
      return {nra_project(std::move(keep), std::move(tb.expr)), std::move(cols)};
    }
    case Formula::Kind::Not: {
      if (!free_vars(f).empty())
        throw TranslateError("internal: open negation outside a conjunction");
      Translated tn = translate(f->lhs);
      return {nra_diff(unit_expr(), std::move(tn.expr)), {}};
    }
    case Formula::Kind::Forall:
      throw TranslateError("universal quantifier survived normal form");
  }
  throw TranslateError("unreachable");
}

}  // namespace

NraPtr fol_to_ra(const FormulaPtr& f) {
  FormulaPtr srnf = to_srnf(f);
  auto rr = range_restriction(srnf);
  std::vector<std::string> fv = free_vars(f);
  if (!rr || *rr != std::set<std::string>(fv.begin(), fv.end()))
    throw NotSafeRangeError("formula is not safe-range");
  RanfCtx ctx;
  FormulaPtr ranf = to_ranf(srnf, ctx);
  Translated out = reorder(translate(ranf), fv);
  return out.expr;
}

}  // namespace nullrel
