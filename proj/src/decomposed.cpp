#include "nullrel/decomposed.hpp"

#include <functional>

namespace nullrel {

namespace {

FormulaPtr map_atoms(const FormulaPtr& f, const std::function<FormulaPtr(const FormulaPtr&)>& fn) {
  switch (f->kind) {
    case Formula::Kind::Atom: return fn(f);
    case Formula::Kind::Eq:
    case Formula::Kind::True:
    case Formula::Kind::False: return f;
    case Formula::Kind::Not: return f_not(map_atoms(f->lhs, fn));
    case Formula::Kind::And: return f_and(map_atoms(f->lhs, fn), map_atoms(f->rhs, fn));
    case Formula::Kind::Or: return f_or(map_atoms(f->lhs, fn), map_atoms(f->rhs, fn));
    case Formula::Kind::Exists: return f_exists(f->var, map_atoms(f->lhs, fn));
    case Formula::Kind::Forall: return f_forall(f->var, map_atoms(f->lhs, fn));
  }
  throw FoleError("unreachable");
}

}  // namespace

FormulaPtr omega_f(const FormulaPtr& f) {
  return map_atoms(f, [](const FormulaPtr& atom) -> FormulaPtr {
    if (atom->positions) throw FoleError("omega_f: atom is already decomposed");
    std::vector<int> positions;
    std::vector<FoleTerm> kept;
    for (std::size_t k = 0; k < atom->terms.size(); ++k) {
      if (atom->terms[k].kind != FoleTerm::Kind::Null) {
        positions.push_back(static_cast<int>(k) + 1);
        kept.push_back(atom->terms[k]);
      }
    }
    return f_atom_decomposed(atom->pred, std::move(positions), std::move(kept));
  });
}

FormulaPtr omega_f_inv(const FormulaPtr& f, const Schema& schema) {
  return map_atoms(f, [&schema](const FormulaPtr& atom) -> FormulaPtr {
    if (!atom->positions) throw FoleError("omega_f_inv: atom is not decomposed");
    int n = schema.arity(atom->pred);
    std::vector<FoleTerm> terms(n, FoleTerm::null());
    for (std::size_t k = 0; k < atom->positions->size(); ++k) {
      int pos = (*atom->positions)[k];
      if (pos < 1 || pos > n) throw FoleError("omega_f_inv: position outside relation arity");
      terms[pos - 1] = atom->terms[k];
    }
    return f_atom(atom->pred, std::move(terms));
  });
}

namespace {

struct DecomposedEvaluator {
  const InstanceDecomposed& inst;
  const std::set<Value>& domain;

  bool eval(const FormulaPtr& f, Assignment& a) const {
    switch (f->kind) {
      case Formula::Kind::Atom: {
        if (!f->positions)
          throw FoleError("atom with null terms in a decomposed evaluation");
        TotalTuple t;
        t.reserve(f->terms.size());
        for (const FoleTerm& term : f->terms) {
          if (term.kind == FoleTerm::Kind::Const) {
            t.push_back(term.value);
          } else {
            auto it = a.find(term.var);
            if (it == a.end()) throw FoleError("unbound variable " + term.var);
            t.push_back(it->second);
          }
        }
        return inst.slot(f->pred, *f->positions).count(t) != 0;
      }
      case Formula::Kind::Eq: {
        auto val = [&](const FoleTerm& t) {
          if (t.kind == FoleTerm::Kind::Const) return t.value;
          auto it = a.find(t.var);
          if (it == a.end()) throw FoleError("unbound variable " + t.var);
          return it->second;
        };
        return val(f->t1) == val(f->t2);
      }
      case Formula::Kind::Not: return !eval(f->lhs, a);
      case Formula::Kind::And: return eval(f->lhs, a) && eval(f->rhs, a);
      case Formula::Kind::Or: return eval(f->lhs, a) || eval(f->rhs, a);
      case Formula::Kind::Exists:
      case Formula::Kind::Forall: {
        bool universal = f->kind == Formula::Kind::Forall;
        for (const Value& o : domain) {
          auto it = a.find(f->var);
          std::optional<Value> saved;
          if (it != a.end()) {
            saved = it->second;
            it->second = o;
          } else {
            a.emplace(f->var, o);
          }
          bool ok = eval(f->lhs, a);
          if (saved)
            a[f->var] = *saved;
          else
            a.erase(f->var);
          if (universal && !ok) return false;
          if (!universal && ok) return true;
        }
        return universal;
      }
      case Formula::Kind::True: return true;
      case Formula::Kind::False: return false;
    }
    throw FoleError("unreachable");
  }
};

}  // namespace

bool eval_fol_decomposed(const FormulaPtr& f, const InstanceDecomposed& inst,
                         const Assignment& a, const std::set<Value>& domain) {
  for (const std::string& x : free_vars(f))
    if (!a.count(x)) throw FoleError("assignment does not bind free variable " + x);
  Assignment work = a;
  return DecomposedEvaluator{inst, domain}.eval(f, work);
}

}  // namespace nullrel
