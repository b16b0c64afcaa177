#include "nullrel/sqlfo.hpp"

namespace nullrel {

namespace {

SqlCondPtr annf(const SqlCondPtr& c, bool neg);

SqlCondPtr absorb_atomic(const SqlCondPtr& c) {
  auto flipped = std::make_shared<SqlCondition>(*c);
  switch (c->kind) {
    case SqlCondition::Kind::Cmp:
      switch (c->op) {
        case SqlCondition::CmpOp::Eq: flipped->op = SqlCondition::CmpOp::Neq; break;
        case SqlCondition::CmpOp::Neq: flipped->op = SqlCondition::CmpOp::Eq; break;
        default:
          // the 2VL comparisons are not closed under 3VL negation
          throw SqlError("cannot absorb a negated 2VL comparison");
      }
      break;
    case SqlCondition::Kind::IsNull: flipped->kind = SqlCondition::Kind::IsNotNull; break;
    case SqlCondition::Kind::IsNotNull: flipped->kind = SqlCondition::Kind::IsNull; break;
    case SqlCondition::Kind::Exists: flipped->kind = SqlCondition::Kind::NotExists; break;
    case SqlCondition::Kind::NotExists: flipped->kind = SqlCondition::Kind::Exists; break;
    case SqlCondition::Kind::In: flipped->kind = SqlCondition::Kind::NotIn; break;
    case SqlCondition::Kind::NotIn: flipped->kind = SqlCondition::Kind::In; break;
    case SqlCondition::Kind::True: flipped->kind = SqlCondition::Kind::False; break;
    case SqlCondition::Kind::False: flipped->kind = SqlCondition::Kind::True; break;
    default: throw SqlError("unreachable");
  }
  return flipped;
}

SqlCondPtr annf(const SqlCondPtr& c, bool neg) {
  switch (c->kind) {
    case SqlCondition::Kind::And:
      return neg ? sql_or(annf(c->lhs, true), annf(c->rhs, true))
                 : sql_and(annf(c->lhs, false), annf(c->rhs, false));
    case SqlCondition::Kind::Or:
      return neg ? sql_and(annf(c->lhs, true), annf(c->rhs, true))
                 : sql_or(annf(c->lhs, false), annf(c->rhs, false));
    case SqlCondition::Kind::Not: return annf(c->lhs, !neg);
    default: return neg ? absorb_atomic(c) : c;
  }
}

}  // namespace

SqlCondPtr to_annf(const SqlCondPtr& c) { return annf(c, false); }

namespace {

struct Rewriter {
  int alias_counter = 0;

  std::string fresh_alias() { return "v" + std::to_string(++alias_counter); }

  SqlExpr bump(const SqlExpr& e) const {
    if (e.kind != SqlExpr::Kind::Column) return e;
    SqlExpr out = e;
    ++out.scope_up;
    return out;
  }

  SqlQueryPtr rewrite(const SqlQueryPtr& q) {
    auto out = std::make_shared<SqlQuery>(*q);
    if (q->kind != SqlQuery::Kind::Select) {
      out->lhs = rewrite(q->lhs);
      out->rhs = rewrite(q->rhs);
      return out;
    }
    for (SqlFromItem& item : out->from)
      if (item.subquery) item.subquery = rewrite(item.subquery);
    out->where = encode(to_annf(q->where));
    return out;
  }

  SqlCondPtr encode(const SqlCondPtr& c) {
    switch (c->kind) {
      case SqlCondition::Kind::And: return sql_and(encode(c->lhs), encode(c->rhs));
      case SqlCondition::Kind::Or: return sql_or(encode(c->lhs), encode(c->rhs));
      case SqlCondition::Kind::True:
      case SqlCondition::Kind::False:
      case SqlCondition::Kind::IsNull:
      case SqlCondition::Kind::IsNotNull: return c;
      case SqlCondition::Kind::Not: throw SqlError("negation survived normalization");
      case SqlCondition::Kind::Cmp: {
        auto out = std::make_shared<SqlCondition>(*c);
        switch (c->op) {
          case SqlCondition::CmpOp::Eq: out->op = SqlCondition::CmpOp::Eq2vl; break;
          case SqlCondition::CmpOp::Neq: out->op = SqlCondition::CmpOp::Neq2vl; break;
          default: break;  // already two-valued
        }
        return out;
      }
      case SqlCondition::Kind::Exists: return sql_exists(rewrite(c->query), false);
      case SqlCondition::Kind::NotExists: return sql_exists(rewrite(c->query), true);
      case SqlCondition::Kind::In:
      case SqlCondition::Kind::NotIn: {
        bool negated = c->kind == SqlCondition::Kind::NotIn;
        if (c->rhs_is_list) {
          // e IN (f1 ... fn)     ->  e =2vl f1 OR ... OR e =2vl fn
          // e NOT IN (f1 ... fn) ->  e !=2vl f1 AND ... AND e !=2vl fn
          SqlCondPtr acc;
          for (const SqlExpr& f : c->rhs_tuple) {
            SqlCondPtr one = sql_cmp(
                negated ? SqlCondition::CmpOp::Neq2vl : SqlCondition::CmpOp::Eq2vl,
                {c->lhs_tuple[0]}, {f});
            acc = acc ? (negated ? sql_and(std::move(acc), std::move(one))
                                 : sql_or(std::move(acc), std::move(one)))
                      : std::move(one);
          }
          return acc ? acc : (negated ? sql_true() : sql_false());
        }
        // e1 ... en [NOT] IN (q) -> [NOT] EXISTS
        //   (SELECT DISTINCT v.1 ... v.n FROM (q') AS v WHERE guards);
        // q keeps its correlation as-is: a derived table is evaluated against
        // the scopes of its containing select, not the select itself, so the
        // move does not change what one hop upward means
        SqlQueryPtr inner_q = rewrite(c->query);
        int n = inner_q->output_arity;
        auto sub = std::make_shared<SqlQuery>();
        sub->kind = SqlQuery::Kind::Select;
        SqlFromItem item;
        item.alias = fresh_alias();
        item.subquery = inner_q;
        item.arity = n;
        item.col_names.assign(n, "");
        sub->from.push_back(std::move(item));
        for (int k = 1; k <= n; ++k) {
          SqlSelectItem si;
          si.expr = SqlExpr::column(0, 0, k, sub->from[0].alias + "." + std::to_string(k));
          sub->select.push_back(std::move(si));
        }
        sub->output_arity = n;
        sub->output_names.assign(n, "");
        SqlCondPtr where;
        for (int k = 1; k <= n; ++k) {
          SqlExpr ek = bump(c->lhs_tuple[k - 1]);
          SqlExpr vk = SqlExpr::column(0, 0, k, sub->from[0].alias + "." + std::to_string(k));
          SqlCondPtr guard;
          if (!negated) {
            // e_k =2vl v.k
            guard = sql_cmp(SqlCondition::CmpOp::Eq2vl, {ek}, {vk});
          } else {
            // ((e_k =2vl v.k OR e_k IS NULL) OR v.k IS NULL)
            guard = sql_or(sql_or(sql_cmp(SqlCondition::CmpOp::Eq2vl, {ek}, {vk}),
                                  sql_is_null(ek, false)),
                           sql_is_null(vk, false));
          }
          where = where ? sql_and(std::move(where), std::move(guard)) : std::move(guard);
        }
        sub->where = where ? where : sql_true();
        return sql_exists(sub, negated);
      }
    }
    throw SqlError("unreachable");
  }
};

}  // namespace

SqlQueryPtr rewrite_2vl(const SqlQueryPtr& q) {
  Rewriter r;
  return r.rewrite(q);
}

}  // namespace nullrel
