#include "nullrel/nra.hpp"

#include <algorithm>
#include <set>

namespace nullrel {

namespace {

std::shared_ptr<SelCond> mk_cond(SelCond::Kind k) {
  auto c = std::make_shared<SelCond>();
  c->kind = k;
  return c;
}

std::shared_ptr<NraExpr> mk_expr(NraExpr::Kind k) {
  auto e = std::make_shared<NraExpr>();
  e->kind = k;
  return e;
}

}  // namespace

SelCondPtr cond_eq_const(int i, Value v) {
  if (v.is_null()) return cond_eq_null(i);
  auto c = mk_cond(SelCond::Kind::EqConst);
  c->i = i;
  c->v = std::move(v);
  return c;
}
SelCondPtr cond_eq_cols(int i, int j) {
  auto c = mk_cond(SelCond::Kind::EqCols);
  c->i = i;
  c->j = j;
  return c;
}
SelCondPtr cond_neq_const(int i, Value v) {
  if (v.is_null()) return cond_neq_null(i);
  auto c = mk_cond(SelCond::Kind::NeqConst);
  c->i = i;
  c->v = std::move(v);
  return c;
}
SelCondPtr cond_neq_cols(int i, int j) {
  auto c = mk_cond(SelCond::Kind::NeqCols);
  c->i = i;
  c->j = j;
  return c;
}
SelCondPtr cond_eq_null(int i) {
  auto c = mk_cond(SelCond::Kind::EqNull);
  c->i = i;
  return c;
}
SelCondPtr cond_neq_null(int i) {
  auto c = mk_cond(SelCond::Kind::NeqNull);
  c->i = i;
  return c;
}
SelCondPtr cond_is_null(int i) {
  auto c = mk_cond(SelCond::Kind::IsNull);
  c->i = i;
  return c;
}
SelCondPtr cond_is_not_null(int i) {
  auto c = mk_cond(SelCond::Kind::IsNotNull);
  c->i = i;
  return c;
}
SelCondPtr cond_and(SelCondPtr a, SelCondPtr b) {
  auto c = mk_cond(SelCond::Kind::And);
  c->lhs = std::move(a);
  c->rhs = std::move(b);
  return c;
}
SelCondPtr cond_or(SelCondPtr a, SelCondPtr b) {
  auto c = mk_cond(SelCond::Kind::Or);
  c->lhs = std::move(a);
  c->rhs = std::move(b);
  return c;
}
SelCondPtr cond_not(SelCondPtr c) {
  auto n = mk_cond(SelCond::Kind::Not);
  n->lhs = std::move(c);
  return n;
}

namespace {

// Negation of an atomic condition, per the absorption pairs.
SelCondPtr negate_atom(const SelCond& c) {
  switch (c.kind) {
    case SelCond::Kind::EqConst: return cond_neq_const(c.i, c.v);
    case SelCond::Kind::NeqConst: return cond_eq_const(c.i, c.v);
    case SelCond::Kind::EqCols: return cond_neq_cols(c.i, c.j);
    case SelCond::Kind::NeqCols: return cond_eq_cols(c.i, c.j);
    case SelCond::Kind::EqNull: return cond_neq_null(c.i);
    case SelCond::Kind::NeqNull: return cond_eq_null(c.i);
    case SelCond::Kind::IsNull: return cond_is_not_null(c.i);
    case SelCond::Kind::IsNotNull: return cond_is_null(c.i);
    default: throw NraError("negate_atom: not atomic");
  }
}

SelCondPtr annf_impl(const SelCondPtr& c, bool negated) {
  switch (c->kind) {
    case SelCond::Kind::And:
      return negated ? cond_or(annf_impl(c->lhs, true), annf_impl(c->rhs, true))
                     : cond_and(annf_impl(c->lhs, false), annf_impl(c->rhs, false));
    case SelCond::Kind::Or:
      return negated ? cond_and(annf_impl(c->lhs, true), annf_impl(c->rhs, true))
                     : cond_or(annf_impl(c->lhs, false), annf_impl(c->rhs, false));
    case SelCond::Kind::Not: return annf_impl(c->lhs, !negated);
    default: return negated ? negate_atom(*c) : c;
  }
}

}  // namespace

SelCondPtr annf(const SelCondPtr& c) { return annf_impl(c, false); }

NraPtr nra_relation(std::string name) {
  auto e = mk_expr(NraExpr::Kind::Relation);
  e->rel = std::move(name);
  return e;
}
NraPtr nra_singleton(Value v) {
  auto e = mk_expr(v.is_null() ? NraExpr::Kind::SingletonNull : NraExpr::Kind::SingletonConst);
  e->value = std::move(v);
  return e;
}
NraPtr nra_select(SelCondPtr cond, NraPtr child) {
  auto e = mk_expr(NraExpr::Kind::Select);
  e->cond = std::move(cond);
  e->lhs = std::move(child);
  return e;
}
NraPtr nra_project(std::vector<int> cols, NraPtr child) {
  auto e = mk_expr(NraExpr::Kind::Project);
  e->cols = std::move(cols);
  e->lhs = std::move(child);
  return e;
}

namespace {
NraPtr binary(NraExpr::Kind k, NraPtr l, NraPtr r) {
  auto e = mk_expr(k);
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}
}  // namespace

NraPtr nra_product(NraPtr l, NraPtr r) { return binary(NraExpr::Kind::Product, std::move(l), std::move(r)); }
NraPtr nra_union(NraPtr l, NraPtr r) { return binary(NraExpr::Kind::Union, std::move(l), std::move(r)); }
NraPtr nra_diff(NraPtr l, NraPtr r) { return binary(NraExpr::Kind::Diff, std::move(l), std::move(r)); }
NraPtr nra_intersect(NraPtr l, NraPtr r) { return binary(NraExpr::Kind::Intersect, std::move(l), std::move(r)); }
NraPtr nra_join(std::vector<std::pair<int, int>> on, NraPtr l, NraPtr r) {
  auto e = binary(NraExpr::Kind::Join, std::move(l), std::move(r));
  const_cast<NraExpr*>(e.get())->join_on = std::move(on);
  return e;
}
NraPtr nra_left_outer_join(std::vector<std::pair<int, int>> on, NraPtr l, NraPtr r) {
  auto e = binary(NraExpr::Kind::LeftOuterJoin, std::move(l), std::move(r));
  const_cast<NraExpr*>(e.get())->join_on = std::move(on);
  return e;
}

namespace {

void check_cond(const SelCondPtr& c, int arity) {
  if (!c) throw NraError("selection without a condition");
  switch (c->kind) {
    case SelCond::Kind::And:
    case SelCond::Kind::Or:
      check_cond(c->lhs, arity);
      check_cond(c->rhs, arity);
      return;
    case SelCond::Kind::Not: check_cond(c->lhs, arity); return;
    case SelCond::Kind::EqCols:
    case SelCond::Kind::NeqCols:
      if (c->j < 1 || c->j > arity) throw NraError("selection column index out of bounds");
      [[fallthrough]];
    default:
      if (c->i < 1 || c->i > arity) throw NraError("selection column index out of bounds");
  }
}

}  // namespace

int check_arity(const NraPtr& e, const Schema& schema) {
  if (!e) throw NraError("null expression");
  switch (e->kind) {
    case NraExpr::Kind::Relation: return schema.arity(e->rel);
    case NraExpr::Kind::SingletonConst:
    case NraExpr::Kind::SingletonNull: return 1;
    case NraExpr::Kind::Select: {
      int n = check_arity(e->lhs, schema);
      check_cond(e->cond, n);
      return n;
    }
    case NraExpr::Kind::Project: {
      int n = check_arity(e->lhs, schema);
      std::set<int> seen;
      for (int c : e->cols) {
        if (c < 1 || c > n) throw NraError("projection index out of bounds");
        if (!seen.insert(c).second) throw NraError("duplicate projection index");
      }
      return static_cast<int>(e->cols.size());
    }
    case NraExpr::Kind::Product: return check_arity(e->lhs, schema) + check_arity(e->rhs, schema);
    case NraExpr::Kind::Union:
    case NraExpr::Kind::Diff:
    case NraExpr::Kind::Intersect: {
      int l = check_arity(e->lhs, schema);
      int r = check_arity(e->rhs, schema);
      if (l != r) throw NraError("arity mismatch in set operation");
      return l;
    }
    case NraExpr::Kind::Join:
    case NraExpr::Kind::LeftOuterJoin: {
      int m = check_arity(e->lhs, schema);
      int n = check_arity(e->rhs, schema);
      std::set<int> right_cols;
      for (auto [i, k] : e->join_on) {
        if (i < 1 || i > m) throw NraError("join column out of bounds on the left");
        if (k < 1 || k > n) throw NraError("join column out of bounds on the right");
        if (!right_cols.insert(k).second) throw NraError("duplicate right join column");
      }
      return m + n - static_cast<int>(e->join_on.size());
    }
  }
  throw NraError("unreachable");
}

namespace {

struct Arities {
  const Schema* schema;
  int of(const NraPtr& e) const { return check_arity(e, *schema); }
};

NraPtr expand(const NraPtr& e, const Arities& ar);

// Expansion of sel[c](e) for an ANNF condition c over an already expanded e.
NraPtr expand_select(const SelCondPtr& c, const NraPtr& e, const Arities& ar) {
  switch (c->kind) {
    case SelCond::Kind::And: {  // sel[c and c'](e) = sel[c](e) intersect sel[c'](e)
      NraPtr a = expand_select(c->lhs, e, ar);
      NraPtr b = expand_select(c->rhs, e, ar);
      return nra_diff(a, nra_diff(a, b));
    }
    case SelCond::Kind::Or:  // sel[c or c'](e) = sel[c](e) union sel[c'](e)
      return nra_union(expand_select(c->lhs, e, ar), expand_select(c->rhs, e, ar));
    case SelCond::Kind::Not: throw NraError("expand_select: condition not in ANNF");
    case SelCond::Kind::EqConst:
    case SelCond::Kind::EqCols: return nra_select(c, e);
    case SelCond::Kind::NeqConst:  // e - sel[i=v](e)
      return nra_diff(e, nra_select(cond_eq_const(c->i, c->v), e));
    case SelCond::Kind::NeqCols:  // sel[i=i](sel[j=j](e)) - sel[i=j](e)
      return nra_diff(
          nra_select(cond_eq_cols(c->i, c->i), nra_select(cond_eq_cols(c->j, c->j), e)),
          nra_select(cond_eq_cols(c->i, c->j), e));
    case SelCond::Kind::EqNull:
    case SelCond::Kind::NeqNull:  // e - e
      return nra_diff(e, e);
    case SelCond::Kind::IsNull:  // e - sel[i=i](e)
      return nra_diff(e, nra_select(cond_eq_cols(c->i, c->i), e));
    case SelCond::Kind::IsNotNull:  // sel[i=i](e)
      return nra_select(cond_eq_cols(c->i, c->i), e);
  }
  throw NraError("unreachable");
}

NraPtr expand(const NraPtr& e, const Arities& ar) {
  switch (e->kind) {
    case NraExpr::Kind::Relation:
    case NraExpr::Kind::SingletonConst:
    case NraExpr::Kind::SingletonNull: return e;
    case NraExpr::Kind::Select:
      return expand_select(annf(e->cond), expand(e->lhs, ar), ar);
    case NraExpr::Kind::Project: return nra_project(e->cols, expand(e->lhs, ar));
    case NraExpr::Kind::Product: return nra_product(expand(e->lhs, ar), expand(e->rhs, ar));
    case NraExpr::Kind::Union: return nra_union(expand(e->lhs, ar), expand(e->rhs, ar));
    case NraExpr::Kind::Diff: return nra_diff(expand(e->lhs, ar), expand(e->rhs, ar));
    case NraExpr::Kind::Intersect: {  // l - (l - r)
      NraPtr l = expand(e->lhs, ar);
      NraPtr r = expand(e->rhs, ar);
      return nra_diff(l, nra_diff(l, r));
    }
    case NraExpr::Kind::Join: {
      // proj[[1..m+n] minus right join cols](sel[i1=m+k1](...(l x r)))
      NraPtr l = expand(e->lhs, ar);
      NraPtr r = expand(e->rhs, ar);
      int m = ar.of(e->lhs);
      int n = ar.of(e->rhs);
      NraPtr body = nra_product(l, r);
      for (auto it = e->join_on.rbegin(); it != e->join_on.rend(); ++it)
        body = nra_select(cond_eq_cols(it->first, m + it->second), std::move(body));
      std::set<int> dropped;
      for (auto [i, k] : e->join_on) dropped.insert(m + k);
      std::vector<int> keep;
      for (int c = 1; c <= m + n; ++c)
        if (!dropped.count(c)) keep.push_back(c);
      return nra_project(std::move(keep), std::move(body));
    }
    case NraExpr::Kind::LeftOuterJoin: {
      // (l join r) union (l - proj[1..m](l join r)) x (<N> x ... x <N>)
      int m = ar.of(e->lhs);
      int n = ar.of(e->rhs);
      int pad = n - static_cast<int>(e->join_on.size());
      NraPtr l = expand(e->lhs, ar);
      NraPtr join = expand(nra_join(e->join_on, e->lhs, e->rhs), ar);
      std::vector<int> left_cols;
      for (int c = 1; c <= m; ++c) left_cols.push_back(c);
      NraPtr unmatched = nra_diff(l, nra_project(std::move(left_cols), join));
      for (int k = 0; k < pad; ++k)
        unmatched = nra_product(std::move(unmatched), nra_singleton(Value::null()));
      return nra_union(join, std::move(unmatched));
    }
  }
  throw NraError("unreachable");
}

}  // namespace

NraPtr expand_derived(const NraPtr& e, const Schema& schema) {
  Arities ar{&schema};
  return expand(e, ar);
}

bool cond_holds(const SelCondPtr& c, const TotalTuple& t) {
  switch (c->kind) {
    case SelCond::Kind::And: return cond_holds(c->lhs, t) && cond_holds(c->rhs, t);
    case SelCond::Kind::Or: return cond_holds(c->lhs, t) || cond_holds(c->rhs, t);
    case SelCond::Kind::Not: throw NraError("cond_holds: condition not in ANNF");
    case SelCond::Kind::EqConst: {
      const Value& x = t[c->i - 1];
      return !x.is_null() && x == c->v;
    }
    case SelCond::Kind::EqCols: {
      const Value& x = t[c->i - 1];
      const Value& y = t[c->j - 1];
      return !x.is_null() && !y.is_null() && x == y;
    }
    case SelCond::Kind::NeqConst: {
      // e - sel[i=v](e): rows where the equality selection would not keep them
      const Value& x = t[c->i - 1];
      return x.is_null() || !(x == c->v);
    }
    case SelCond::Kind::NeqCols: {
      const Value& x = t[c->i - 1];
      const Value& y = t[c->j - 1];
      return !x.is_null() && !y.is_null() && !(x == y);
    }
    case SelCond::Kind::EqNull:
    case SelCond::Kind::NeqNull: return false;  // e - e
    case SelCond::Kind::IsNull: return t[c->i - 1].is_null();
    case SelCond::Kind::IsNotNull: return !t[c->i - 1].is_null();
  }
  throw NraError("unreachable");
}

namespace {

std::string cols_to_string(const std::vector<int>& cols) {
  std::string s;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(cols[k]);
  }
  return s;
}

std::string join_to_string(const std::vector<std::pair<int, int>>& on) {
  std::string s;
  for (std::size_t k = 0; k < on.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(on[k].first) + "=" + std::to_string(on[k].second);
  }
  return s;
}

// Constants in the surface grammar: quoted text, #-prefixed integers.
std::string sel_value(const Value& v) {
  if (v.kind() == Value::Kind::Int) return "#" + std::to_string(v.as_int());
  return v.to_string();
}

}  // namespace

std::string to_string(const SelCondPtr& c) {
  switch (c->kind) {
    case SelCond::Kind::EqConst: return std::to_string(c->i) + "=" + sel_value(c->v);
    case SelCond::Kind::EqCols: return std::to_string(c->i) + "=" + std::to_string(c->j);
    case SelCond::Kind::NeqConst: return std::to_string(c->i) + "!=" + sel_value(c->v);
    case SelCond::Kind::NeqCols: return std::to_string(c->i) + "!=" + std::to_string(c->j);
    case SelCond::Kind::EqNull: return std::to_string(c->i) + "=NULL";
    case SelCond::Kind::NeqNull: return std::to_string(c->i) + "!=NULL";
    case SelCond::Kind::IsNull: return "isNull(" + std::to_string(c->i) + ")";
    case SelCond::Kind::IsNotNull: return "isNotNull(" + std::to_string(c->i) + ")";
    case SelCond::Kind::And: return to_string(c->lhs) + " and " + to_string(c->rhs);
    case SelCond::Kind::Or: return "(" + to_string(c->lhs) + " or " + to_string(c->rhs) + ")";
    case SelCond::Kind::Not: return "not (" + to_string(c->lhs) + ")";
  }
  return "";
}

std::string to_string(const NraPtr& e) {
  switch (e->kind) {
    case NraExpr::Kind::Relation: return "rel " + e->rel;
    case NraExpr::Kind::SingletonConst: return "singleton " + e->value.to_string();
    case NraExpr::Kind::SingletonNull: return "singleton NULL";
    case NraExpr::Kind::Select: return "sel[" + to_string(e->cond) + "](" + to_string(e->lhs) + ")";
    case NraExpr::Kind::Project:
      return "proj[" + cols_to_string(e->cols) + "](" + to_string(e->lhs) + ")";
    case NraExpr::Kind::Product: return "(" + to_string(e->lhs) + " x " + to_string(e->rhs) + ")";
    case NraExpr::Kind::Union:
      return "(" + to_string(e->lhs) + " union " + to_string(e->rhs) + ")";
    case NraExpr::Kind::Diff: return "(" + to_string(e->lhs) + " minus " + to_string(e->rhs) + ")";
    case NraExpr::Kind::Intersect:
      return "(" + to_string(e->lhs) + " intersect " + to_string(e->rhs) + ")";
    case NraExpr::Kind::Join:
      return "join[" + join_to_string(e->join_on) + "](" + to_string(e->lhs) + "," +
             to_string(e->rhs) + ")";
    case NraExpr::Kind::LeftOuterJoin:
      return "louter[" + join_to_string(e->join_on) + "](" + to_string(e->lhs) + "," +
             to_string(e->rhs) + ")";
  }
  return "";
}

Relation eval_nra(const NraPtr& e, const InstanceN& inst) {
  switch (e->kind) {
    case NraExpr::Kind::Relation: {
      inst.schema.arity(e->rel);  // unknown relation check
      return inst.at(e->rel);
    }
    case NraExpr::Kind::SingletonConst:
    case NraExpr::Kind::SingletonNull: return {TotalTuple{e->value}};
    case NraExpr::Kind::Select: {
      Relation in = eval_nra(e->lhs, inst);
      SelCondPtr c = annf(e->cond);
      Relation out;
      for (const TotalTuple& t : in)
        if (cond_holds(c, t)) out.insert(t);
      return out;
    }
    case NraExpr::Kind::Project: {
      Relation in = eval_nra(e->lhs, inst);
      Relation out;
      for (const TotalTuple& t : in) {
        TotalTuple p;
        p.reserve(e->cols.size());
        for (int c : e->cols) p.push_back(t[c - 1]);
        out.insert(std::move(p));
      }
      return out;
    }
    case NraExpr::Kind::Product: {
      Relation l = eval_nra(e->lhs, inst);
      Relation r = eval_nra(e->rhs, inst);
      Relation out;
      for (const TotalTuple& a : l)
        for (const TotalTuple& b : r) {
          TotalTuple t = a;
          t.insert(t.end(), b.begin(), b.end());
          out.insert(std::move(t));
        }
      return out;
    }
    case NraExpr::Kind::Union: {
      Relation out = eval_nra(e->lhs, inst);
      Relation r = eval_nra(e->rhs, inst);
      out.insert(r.begin(), r.end());
      return out;
    }
    case NraExpr::Kind::Diff: {
      Relation l = eval_nra(e->lhs, inst);
      Relation r = eval_nra(e->rhs, inst);
      Relation out;
      for (const TotalTuple& t : l)
        if (!r.count(t)) out.insert(t);
      return out;
    }
    case NraExpr::Kind::Intersect: {
      Relation l = eval_nra(e->lhs, inst);
      Relation r = eval_nra(e->rhs, inst);
      Relation out;
      for (const TotalTuple& t : l)
        if (r.count(t)) out.insert(t);
      return out;
    }
    case NraExpr::Kind::Join:
    case NraExpr::Kind::LeftOuterJoin: {
      Relation l = eval_nra(e->lhs, inst);
      Relation r = eval_nra(e->rhs, inst);
      int n = check_arity(e->rhs, inst.schema);
      std::set<int> dropped;
      for (auto [i, k] : e->join_on) dropped.insert(k);
      Relation out;
      for (const TotalTuple& a : l) {
        bool matched = false;
        for (const TotalTuple& b : r) {
          bool ok = true;
          for (auto [i, k] : e->join_on) {
            const Value& x = a[i - 1];
            const Value& y = b[k - 1];
            if (x.is_null() || y.is_null() || !(x == y)) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          matched = true;
          TotalTuple t = a;
          for (int c = 1; c <= n; ++c)
            if (!dropped.count(c)) t.push_back(b[c - 1]);
          out.insert(std::move(t));
        }
        if (!matched && e->kind == NraExpr::Kind::LeftOuterJoin) {
          TotalTuple t = a;
          for (int c = 0; c < n - static_cast<int>(e->join_on.size()); ++c)
            t.push_back(Value::null());
          out.insert(std::move(t));
        }
      }
      return out;
    }
  }
  throw NraError("unreachable");
}

bool cond_equal(const SelCondPtr& a, const SelCondPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->i != b->i || a->j != b->j || !(a->v == b->v)) return false;
  return cond_equal(a->lhs, b->lhs) && cond_equal(a->rhs, b->rhs);
}

bool nra_equal(const NraPtr& a, const NraPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->rel != b->rel || !(a->value == b->value) || a->cols != b->cols ||
      a->join_on != b->join_on)
    return false;
  if (!cond_equal(a->cond, b->cond)) return false;
  return nra_equal(a->lhs, b->lhs) && nra_equal(a->rhs, b->rhs);
}

std::size_t nra_size(const NraPtr& e) {
  if (!e) return 0;
  return 1 + nra_size(e->lhs) + nra_size(e->rhs);
}

}  // namespace nullrel
