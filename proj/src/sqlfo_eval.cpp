#include "nullrel/sqlfo.hpp"

namespace nullrel {

Truth3 t3_not(Truth3 a) {
  switch (a) {
    case Truth3::True: return Truth3::False;
    case Truth3::False: return Truth3::True;
    case Truth3::Unknown: return Truth3::Unknown;
  }
  return Truth3::Unknown;
}
Truth3 t3_and(Truth3 a, Truth3 b) {
  if (a == Truth3::False || b == Truth3::False) return Truth3::False;
  if (a == Truth3::True && b == Truth3::True) return Truth3::True;
  return Truth3::Unknown;
}
Truth3 t3_or(Truth3 a, Truth3 b) {
  if (a == Truth3::True || b == Truth3::True) return Truth3::True;
  if (a == Truth3::False && b == Truth3::False) return Truth3::False;
  return Truth3::Unknown;
}

namespace {

Value expr_value(const SqlExpr& e, const RowScope& scope) {
  if (e.kind == SqlExpr::Kind::Literal) return e.literal;
  const RowScope* s = &scope;
  for (int up = 0; up < e.scope_up; ++up) {
    s = s->outer;
    if (!s) throw SqlError("column reference escapes its scopes");
  }
  return (*s->rows[e.from_index])[e.col_pos - 1];
}

// cell equality: unknown when either side is NULL
Truth3 cell_eq(const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) return Truth3::Unknown;
  return a == b ? Truth3::True : Truth3::False;
}

// tuple equality: true if every cell pair is true, false if some pair is
// false, unknown otherwise
Truth3 tuple_eq(const std::vector<Value>& a, const std::vector<Value>& b) {
  Truth3 acc = Truth3::True;
  for (std::size_t k = 0; k < a.size(); ++k) acc = t3_and(acc, cell_eq(a[k], b[k]));
  return acc;
}

std::vector<Value> tuple_values(const std::vector<SqlExpr>& t, const RowScope& scope) {
  std::vector<Value> out;
  out.reserve(t.size());
  for (const SqlExpr& e : t) out.push_back(expr_value(e, scope));
  return out;
}

Relation exec(const SqlQueryPtr& q, const RowScope* outer, const InstanceN& inst);

}  // namespace

Truth3 eval_3vl(const SqlCondPtr& c, const RowScope& scope, const InstanceN& inst) {
  switch (c->kind) {
    case SqlCondition::Kind::Cmp: {
      Truth3 eq = tuple_eq(tuple_values(c->lhs_tuple, scope), tuple_values(c->rhs_tuple, scope));
      switch (c->op) {
        case SqlCondition::CmpOp::Eq: return eq;
        case SqlCondition::CmpOp::Neq: return t3_not(eq);
        case SqlCondition::CmpOp::Eq2vl:
          return eq == Truth3::True ? Truth3::True : Truth3::False;
        case SqlCondition::CmpOp::Neq2vl:
          return t3_not(eq) == Truth3::True ? Truth3::True : Truth3::False;
      }
      return Truth3::Unknown;
    }
    case SqlCondition::Kind::IsNull:
      return expr_value(c->lhs_tuple[0], scope).is_null() ? Truth3::True : Truth3::False;
    case SqlCondition::Kind::IsNotNull:
      return expr_value(c->lhs_tuple[0], scope).is_null() ? Truth3::False : Truth3::True;
    case SqlCondition::Kind::Exists:
      return exec(c->query, &scope, inst).empty() ? Truth3::False : Truth3::True;
    case SqlCondition::Kind::NotExists:
      return exec(c->query, &scope, inst).empty() ? Truth3::True : Truth3::False;
    case SqlCondition::Kind::In:
    case SqlCondition::Kind::NotIn: {
      std::vector<Value> lhs = tuple_values(c->lhs_tuple, scope);
      Truth3 in = Truth3::False;
      if (c->rhs_is_list) {
        for (const SqlExpr& f : c->rhs_tuple)
          in = t3_or(in, cell_eq(lhs[0], expr_value(f, scope)));
      } else {
        for (const TotalTuple& row : exec(c->query, &scope, inst))
          in = t3_or(in, tuple_eq(lhs, row));
      }
      return c->kind == SqlCondition::Kind::In ? in : t3_not(in);
    }
    case SqlCondition::Kind::Not: return t3_not(eval_3vl(c->lhs, scope, inst));
    case SqlCondition::Kind::And:
      return t3_and(eval_3vl(c->lhs, scope, inst), eval_3vl(c->rhs, scope, inst));
    case SqlCondition::Kind::Or:
      return t3_or(eval_3vl(c->lhs, scope, inst), eval_3vl(c->rhs, scope, inst));
    case SqlCondition::Kind::True: return Truth3::True;
    case SqlCondition::Kind::False: return Truth3::False;
  }
  throw SqlError("unreachable");
}

namespace {

Relation exec_select(const SqlQuery& q, const RowScope* outer, const InstanceN& inst) {
  // materialize each FROM item
  std::vector<Relation> sources;
  sources.reserve(q.from.size());
  for (const SqlFromItem& item : q.from) {
    if (item.subquery)
      sources.push_back(exec(item.subquery, outer, inst));
    else
      sources.push_back(inst.at(item.table));
  }
  Relation out;
  std::vector<Relation::const_iterator> its(sources.size());
  // product enumeration with early exit on any empty source
  for (std::size_t k = 0; k < sources.size(); ++k) {
    if (sources[k].empty()) return out;
    its[k] = sources[k].begin();
  }
  while (true) {
    RowScope scope;
    scope.select = &q;
    scope.outer = outer;
    for (std::size_t k = 0; k < sources.size(); ++k) scope.rows.push_back(&*its[k]);
    if (eval_3vl(q.where, scope, inst) == Truth3::True) {
      TotalTuple row;
      row.reserve(q.select.size());
      for (const SqlSelectItem& si : q.select) row.push_back(expr_value(si.expr, scope));
      out.insert(std::move(row));
    }
    std::size_t k = 0;
    for (; k < sources.size(); ++k) {
      if (++its[k] != sources[k].end()) break;
      its[k] = sources[k].begin();
    }
    if (k == sources.size()) break;
  }
  return out;
}

Relation exec(const SqlQueryPtr& q, const RowScope* outer, const InstanceN& inst) {
  switch (q->kind) {
    case SqlQuery::Kind::Select: return exec_select(*q, outer, inst);
    case SqlQuery::Kind::Union: {
      Relation out = exec(q->lhs, outer, inst);
      Relation r = exec(q->rhs, outer, inst);
      out.insert(r.begin(), r.end());
      return out;
    }
    case SqlQuery::Kind::Intersect: {
      Relation l = exec(q->lhs, outer, inst);
      Relation r = exec(q->rhs, outer, inst);
      Relation out;
      for (const TotalTuple& t : l)
        if (r.count(t)) out.insert(t);
      return out;
    }
    case SqlQuery::Kind::Except: {
      Relation l = exec(q->lhs, outer, inst);
      Relation r = exec(q->rhs, outer, inst);
      Relation out;
      for (const TotalTuple& t : l)
        if (!r.count(t)) out.insert(t);
      return out;
    }
  }
  throw SqlError("unreachable");
}

}  // namespace

Relation exec_sql(const SqlQueryPtr& q, const InstanceN& inst) { return exec(q, nullptr, inst); }

bool check_sql_check(const InstanceN& inst, const std::string& table, const SqlCondPtr& cond) {
  // satisfied iff NOT EXISTS (SELECT 'fail' FROM table WHERE NOT (cond)):
  // no row may make the condition 3VL-false
  SqlQuery probe;
  probe.kind = SqlQuery::Kind::Select;
  SqlFromItem item;
  item.alias = table;
  item.table = table;
  item.arity = inst.schema.arity(table);
  probe.from.push_back(item);
  for (const TotalTuple& row : inst.at(table)) {
    RowScope scope;
    scope.select = &probe;
    scope.rows = {&row};
    if (eval_3vl(sql_not(cond), scope, inst) == Truth3::True) return false;
  }
  return true;
}

}  // namespace nullrel
