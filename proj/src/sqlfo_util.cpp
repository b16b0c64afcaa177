#include "nullrel/sqlfo.hpp"

namespace nullrel {

namespace {

std::string expr_str(const SqlExpr& e) {
  if (e.kind == SqlExpr::Kind::Literal) return e.literal.to_string();
  if (!e.display.empty()) return e.display;
  std::string s = "$" + std::to_string(e.from_index + 1) + "." + std::to_string(e.col_pos);
  for (int k = 0; k < e.scope_up; ++k) s = "^" + s;
  return s;
}

std::string tuple_str(const std::vector<SqlExpr>& t) {
  if (t.size() == 1) return expr_str(t[0]);
  std::string s = "(";
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k) s += ", ";
    s += expr_str(t[k]);
  }
  return s + ")";
}

std::string cond_str(const SqlCondPtr& c, int level) {
  switch (c->kind) {
    case SqlCondition::Kind::Cmp: {
      const char* op = "=";
      switch (c->op) {
        case SqlCondition::CmpOp::Eq: op = "="; break;
        case SqlCondition::CmpOp::Neq: op = "!="; break;
        case SqlCondition::CmpOp::Eq2vl: op = "=2VL"; break;
        case SqlCondition::CmpOp::Neq2vl: op = "!=2VL"; break;
      }
      return tuple_str(c->lhs_tuple) + " " + op + " " + tuple_str(c->rhs_tuple);
    }
    case SqlCondition::Kind::IsNull: return expr_str(c->lhs_tuple[0]) + " IS NULL";
    case SqlCondition::Kind::IsNotNull: return expr_str(c->lhs_tuple[0]) + " IS NOT NULL";
    case SqlCondition::Kind::Exists: return "EXISTS (" + to_string(c->query) + ")";
    case SqlCondition::Kind::NotExists: return "NOT EXISTS (" + to_string(c->query) + ")";
    case SqlCondition::Kind::In:
    case SqlCondition::Kind::NotIn: {
      std::string s = tuple_str(c->lhs_tuple);
      s += c->kind == SqlCondition::Kind::In ? " IN (" : " NOT IN (";
      if (c->rhs_is_list) {
        for (std::size_t k = 0; k < c->rhs_tuple.size(); ++k) {
          if (k) s += ", ";
          s += expr_str(c->rhs_tuple[k]);
        }
      } else {
        s += to_string(c->query);
      }
      return s + ")";
    }
    case SqlCondition::Kind::Not: return "NOT (" + cond_str(c->lhs, 2) + ")";
    case SqlCondition::Kind::And: {
      std::string s = cond_str(c->lhs, 1) + " AND " + cond_str(c->rhs, 1);
      return level < 2 ? s : "(" + s + ")";
    }
    case SqlCondition::Kind::Or: {
      std::string s = cond_str(c->lhs, 0) + " OR " + cond_str(c->rhs, 0);
      return level < 1 ? s : "(" + s + ")";
    }
    case SqlCondition::Kind::True: return "TRUE";
    case SqlCondition::Kind::False: return "FALSE";
  }
  return "";
}

}  // namespace

std::string to_string(const SqlCondPtr& c) { return cond_str(c, 0); }

std::string to_string(const SqlQueryPtr& q) {
  switch (q->kind) {
    case SqlQuery::Kind::Select: {
      std::string s = "SELECT DISTINCT ";
      for (std::size_t k = 0; k < q->select.size(); ++k) {
        if (k) s += ", ";
        s += expr_str(q->select[k].expr);
        if (!q->select[k].alias.empty()) s += " AS " + q->select[k].alias;
      }
      s += " FROM ";
      for (std::size_t k = 0; k < q->from.size(); ++k) {
        if (k) s += ", ";
        const SqlFromItem& item = q->from[k];
        if (item.subquery) {
          s += "(" + to_string(item.subquery) + ") AS " + item.alias;
        } else {
          s += item.table;
          if (item.alias != item.table) s += " AS " + item.alias;
        }
      }
      if (q->where->kind != SqlCondition::Kind::True) s += " WHERE " + to_string(q->where);
      return s;
    }
    case SqlQuery::Kind::Union: return to_string(q->lhs) + " UNION " + to_string(q->rhs);
    case SqlQuery::Kind::Intersect:
      return to_string(q->lhs) + " INTERSECT " + to_string(q->rhs);
    case SqlQuery::Kind::Except: return to_string(q->lhs) + " EXCEPT " + to_string(q->rhs);
  }
  return "";
}

namespace {

bool expr_equal(const SqlExpr& a, const SqlExpr& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == SqlExpr::Kind::Literal) return a.literal == b.literal;
  return a.scope_up == b.scope_up && a.from_index == b.from_index && a.col_pos == b.col_pos;
}

bool tuple_equal(const std::vector<SqlExpr>& a, const std::vector<SqlExpr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!expr_equal(a[k], b[k])) return false;
  return true;
}

}  // namespace

// Equality up to alias naming: FROM aliases, AS names and display strings are
// ignored; resolved coordinates, operators and structure must match.
bool sql_cond_equal(const SqlCondPtr& a, const SqlCondPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case SqlCondition::Kind::Cmp:
      return a->op == b->op && tuple_equal(a->lhs_tuple, b->lhs_tuple) &&
             tuple_equal(a->rhs_tuple, b->rhs_tuple);
    case SqlCondition::Kind::IsNull:
    case SqlCondition::Kind::IsNotNull: return tuple_equal(a->lhs_tuple, b->lhs_tuple);
    case SqlCondition::Kind::Exists:
    case SqlCondition::Kind::NotExists: return sql_query_equal(a->query, b->query);
    case SqlCondition::Kind::In:
    case SqlCondition::Kind::NotIn:
      if (a->rhs_is_list != b->rhs_is_list) return false;
      if (!tuple_equal(a->lhs_tuple, b->lhs_tuple)) return false;
      return a->rhs_is_list ? tuple_equal(a->rhs_tuple, b->rhs_tuple)
                            : sql_query_equal(a->query, b->query);
    case SqlCondition::Kind::Not: return sql_cond_equal(a->lhs, b->lhs);
    case SqlCondition::Kind::And:
    case SqlCondition::Kind::Or:
      return sql_cond_equal(a->lhs, b->lhs) && sql_cond_equal(a->rhs, b->rhs);
    case SqlCondition::Kind::True:
    case SqlCondition::Kind::False: return true;
  }
  return false;
}

bool sql_query_equal(const SqlQueryPtr& a, const SqlQueryPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->output_arity != b->output_arity) return false;
  if (a->kind != SqlQuery::Kind::Select)
    return sql_query_equal(a->lhs, b->lhs) && sql_query_equal(a->rhs, b->rhs);
  if (a->select.size() != b->select.size() || a->from.size() != b->from.size()) return false;
  for (std::size_t k = 0; k < a->select.size(); ++k)
    if (!expr_equal(a->select[k].expr, b->select[k].expr)) return false;
  for (std::size_t k = 0; k < a->from.size(); ++k) {
    const SqlFromItem& fa = a->from[k];
    const SqlFromItem& fb = b->from[k];
    if (fa.table != fb.table || fa.arity != fb.arity) return false;
    if (!sql_query_equal(fa.subquery, fb.subquery)) return false;
  }
  return sql_cond_equal(a->where, b->where);
}

}  // namespace nullrel
