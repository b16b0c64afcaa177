#include <set>

#include "nullrel/sqlfo.hpp"

namespace nullrel {

namespace {

bool cond_escapes(const SqlCondPtr& c, int depth);

bool expr_escapes(const SqlExpr& e, int depth) {
  return e.kind == SqlExpr::Kind::Column && e.scope_up >= depth;
}

bool query_escapes(const SqlQueryPtr& q, int depth) {
  if (q->kind != SqlQuery::Kind::Select)
    return query_escapes(q->lhs, depth) || query_escapes(q->rhs, depth);
  for (const SqlSelectItem& si : q->select)
    if (expr_escapes(si.expr, depth)) return true;
  for (const SqlFromItem& item : q->from)
    if (item.subquery && query_escapes(item.subquery, depth)) return true;
  return cond_escapes(q->where, depth);
}

bool cond_escapes(const SqlCondPtr& c, int depth) {
  for (const SqlExpr& e : c->lhs_tuple)
    if (expr_escapes(e, depth)) return true;
  for (const SqlExpr& e : c->rhs_tuple)
    if (expr_escapes(e, depth)) return true;
  if (c->query && query_escapes(c->query, depth + 1)) return true;
  if (c->lhs && cond_escapes(c->lhs, depth)) return true;
  if (c->rhs && cond_escapes(c->rhs, depth)) return true;
  return false;
}

struct CompileScope {
  const CompileScope* outer = nullptr;
  std::vector<int> offsets;  // columns before each FROM item in the full row
};

// Positions stay valid at any nesting depth because each subquery's row
// extends its enclosing row on the right.
int abs_pos(const SqlExpr& e, const CompileScope* scope) {
  const CompileScope* s = scope;
  for (int up = 0; up < e.scope_up; ++up) {
    if (!s) throw SqlError("column reference escapes its scopes");
    s = s->outer;
  }
  if (!s) throw SqlError("column reference escapes its scopes");
  return s->offsets[e.from_index] + e.col_pos;
}

NraPtr empty_like(const NraPtr& c) { return nra_diff(c, c); }

struct Compiler {
  const Schema& schema;

  NraPtr query(const SqlQueryPtr& q, const CompileScope* outer_scope, NraPtr outer_expr,
               int outer_width) {
    switch (q->kind) {
      case SqlQuery::Kind::Select: return select(*q, outer_scope, outer_expr, outer_width);
      case SqlQuery::Kind::Union:
        return nra_union(query(q->lhs, outer_scope, outer_expr, outer_width),
                         query(q->rhs, outer_scope, outer_expr, outer_width));
      case SqlQuery::Kind::Intersect:
        return nra_intersect(query(q->lhs, outer_scope, outer_expr, outer_width),
                             query(q->rhs, outer_scope, outer_expr, outer_width));
      case SqlQuery::Kind::Except:
        return nra_diff(query(q->lhs, outer_scope, outer_expr, outer_width),
                        query(q->rhs, outer_scope, outer_expr, outer_width));
    }
    throw SqlError("unreachable");
  }

  NraPtr select(const SqlQuery& q, const CompileScope* outer_scope, NraPtr outer_expr,
                int outer_width) {
    NraPtr c = std::move(outer_expr);
    int w = outer_width;
    CompileScope scope;
    scope.outer = outer_scope;
    for (const SqlFromItem& item : q.from) {
      scope.offsets.push_back(w);
      if (item.subquery && query_escapes(item.subquery, 1)) {
        // correlated derived table: extend the accumulated rows directly
        c = query(item.subquery, outer_scope, c, w);
      } else {
        NraPtr source =
            item.subquery ? query(item.subquery, nullptr, nullptr, 0) : nra_relation(item.table);
        c = c ? nra_product(std::move(c), std::move(source)) : std::move(source);
      }
      w += item.arity;
    }
    c = apply(std::move(c), q.where, &scope, w);

    std::vector<int> keep;
    std::set<int> used;
    for (int k = 1; k <= outer_width; ++k) {
      keep.push_back(k);
      used.insert(k);
    }
    for (const SqlSelectItem& si : q.select) {
      int pos;
      if (si.expr.kind == SqlExpr::Kind::Literal) {
        c = nra_product(std::move(c), nra_singleton(si.expr.literal));
        pos = ++w;
      } else {
        pos = abs_pos(si.expr, &scope);
      }
      if (used.count(pos)) {
        // duplicate column: append a null-safe copy
        NraPtr paired =
            nra_select(cond_eq_cols(pos, w + 1), nra_product(c, nra_project({pos}, c)));
        NraPtr padded =
            nra_product(nra_select(cond_is_null(pos), c), nra_singleton(Value::null()));
        c = nra_union(std::move(paired), std::move(padded));
        pos = ++w;
      }
      used.insert(pos);
      keep.push_back(pos);
    }
    return nra_project(std::move(keep), std::move(c));
  }

  NraPtr apply(NraPtr c, const SqlCondPtr& cond, const CompileScope* scope, int w) {
    switch (cond->kind) {
      case SqlCondition::Kind::True: return c;
      case SqlCondition::Kind::False: return empty_like(c);
      case SqlCondition::Kind::And:
        return apply(apply(std::move(c), cond->lhs, scope, w), cond->rhs, scope, w);
      case SqlCondition::Kind::Or: {
        NraPtr l = apply(c, cond->lhs, scope, w);
        NraPtr r = apply(c, cond->rhs, scope, w);
        return nra_union(std::move(l), std::move(r));
      }
      case SqlCondition::Kind::IsNull:
      case SqlCondition::Kind::IsNotNull: {
        bool want_null = cond->kind == SqlCondition::Kind::IsNull;
        const SqlExpr& e = cond->lhs_tuple[0];
        if (e.kind == SqlExpr::Kind::Literal)
          return e.literal.is_null() == want_null ? c : empty_like(c);
        int i = abs_pos(e, scope);
        return nra_select(want_null ? cond_is_null(i) : cond_is_not_null(i), std::move(c));
      }
      case SqlCondition::Kind::Cmp: {
        if (cond->op == SqlCondition::CmpOp::Eq || cond->op == SqlCondition::CmpOp::Neq)
          throw SqlError("three-valued comparison reached the compiler; rewrite first");
        bool eq = cond->op == SqlCondition::CmpOp::Eq2vl;
        SelCondPtr acc;
        for (std::size_t k = 0; k < cond->lhs_tuple.size(); ++k) {
          const SqlExpr& l = cond->lhs_tuple[k];
          const SqlExpr& r = cond->rhs_tuple[k];
          bool lc = l.kind == SqlExpr::Kind::Column, rc = r.kind == SqlExpr::Kind::Column;
          SelCondPtr one;
          if (lc && rc) {
            int a = abs_pos(l, scope), b = abs_pos(r, scope);
            one = eq ? cond_eq_cols(a, b) : cond_neq_cols(a, b);
          } else if (lc || rc) {
            int a = abs_pos(lc ? l : r, scope);
            const Value& v = lc ? r.literal : l.literal;
            if (v.is_null()) {
              if (eq) return empty_like(c);  // x =2vl NULL never holds
              continue;                      // x !=2vl NULL never holds
            }
            one = eq ? cond_eq_const(a, v)
                     : cond_and(cond_is_not_null(a), cond_neq_const(a, v));
          } else {
            const Value& a = l.literal;
            const Value& b = r.literal;
            bool holds = !a.is_null() && !b.is_null() && (eq ? a == b : !(a == b));
            if (eq) {
              if (holds) continue;        // neutral conjunct
              return empty_like(c);       // definitely false
            }
            if (holds) return c;          // definitely true disjunct
            continue;                     // neutral disjunct
          }
          acc = acc ? (eq ? cond_and(std::move(acc), std::move(one))
                          : cond_or(std::move(acc), std::move(one)))
                    : std::move(one);
        }
        if (!acc) return eq ? c : empty_like(c);
        return nra_select(std::move(acc), std::move(c));
      }
      case SqlCondition::Kind::Exists:
      case SqlCondition::Kind::NotExists: {
        NraPtr rows = query(cond->query, scope, c, w);
        std::vector<int> keep;
        for (int k = 1; k <= w; ++k) keep.push_back(k);
        NraPtr matched = nra_project(std::move(keep), std::move(rows));
        if (cond->kind == SqlCondition::Kind::Exists) return matched;
        return nra_diff(std::move(c), std::move(matched));
      }
      case SqlCondition::Kind::In:
      case SqlCondition::Kind::NotIn:
      case SqlCondition::Kind::Not:
        throw SqlError("condition must be rewritten to classical form before compiling");
    }
    throw SqlError("unreachable");
  }
};

}  // namespace

NraPtr compile_to_nra(const SqlQueryPtr& q, const Schema& schema) {
  SqlQueryPtr rewritten = rewrite_2vl(q);
  Compiler compiler{schema};
  NraPtr out = compiler.query(rewritten, nullptr, nullptr, 0);
  check_arity(out, schema);
  return out;
}

}  // namespace nullrel
