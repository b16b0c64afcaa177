#include <functional>

#include "nullrel/sqlfo.hpp"
#include "parse_util.hpp"

namespace nullrel {

SqlExpr SqlExpr::column(int scope_up, int from_index, int col_pos, std::string display) {
  SqlExpr e;
  e.kind = Kind::Column;
  e.scope_up = scope_up;
  e.from_index = from_index;
  e.col_pos = col_pos;
  e.display = std::move(display);
  return e;
}
SqlExpr SqlExpr::lit(Value v) {
  SqlExpr e;
  e.kind = Kind::Literal;
  e.literal = std::move(v);
  return e;
}

namespace {
std::shared_ptr<SqlCondition> mk_cond(SqlCondition::Kind k) {
  auto c = std::make_shared<SqlCondition>();
  c->kind = k;
  return c;
}
}  // namespace

SqlCondPtr sql_cmp(SqlCondition::CmpOp op, std::vector<SqlExpr> l, std::vector<SqlExpr> r) {
  if (l.size() != r.size()) throw SqlError("tuple comparison with mismatched arities");
  if (l.empty()) throw SqlError("empty tuple comparison");
  auto c = mk_cond(SqlCondition::Kind::Cmp);
  c->op = op;
  c->lhs_tuple = std::move(l);
  c->rhs_tuple = std::move(r);
  return c;
}
SqlCondPtr sql_is_null(SqlExpr e, bool negated) {
  auto c = mk_cond(negated ? SqlCondition::Kind::IsNotNull : SqlCondition::Kind::IsNull);
  c->lhs_tuple = {std::move(e)};
  return c;
}
SqlCondPtr sql_exists(SqlQueryPtr q, bool negated) {
  auto c = mk_cond(negated ? SqlCondition::Kind::NotExists : SqlCondition::Kind::Exists);
  c->query = std::move(q);
  return c;
}
SqlCondPtr sql_in(std::vector<SqlExpr> tuple, SqlQueryPtr q, bool negated) {
  if (static_cast<int>(tuple.size()) != q->output_arity)
    throw SqlError("IN tuple arity does not match the subquery");
  auto c = mk_cond(negated ? SqlCondition::Kind::NotIn : SqlCondition::Kind::In);
  c->lhs_tuple = std::move(tuple);
  c->query = std::move(q);
  return c;
}
SqlCondPtr sql_in_list(std::vector<SqlExpr> tuple, std::vector<SqlExpr> list, bool negated) {
  if (tuple.size() != 1)
    throw SqlError("IN with a value list takes a single expression on the left");
  auto c = mk_cond(negated ? SqlCondition::Kind::NotIn : SqlCondition::Kind::In);
  c->lhs_tuple = std::move(tuple);
  c->rhs_tuple = std::move(list);
  c->rhs_is_list = true;
  return c;
}
SqlCondPtr sql_not(SqlCondPtr c) {
  auto n = mk_cond(SqlCondition::Kind::Not);
  n->lhs = std::move(c);
  return n;
}
SqlCondPtr sql_and(SqlCondPtr a, SqlCondPtr b) {
  auto c = mk_cond(SqlCondition::Kind::And);
  c->lhs = std::move(a);
  c->rhs = std::move(b);
  return c;
}
SqlCondPtr sql_or(SqlCondPtr a, SqlCondPtr b) {
  auto c = mk_cond(SqlCondition::Kind::Or);
  c->lhs = std::move(a);
  c->rhs = std::move(b);
  return c;
}
SqlCondPtr sql_true() { return mk_cond(SqlCondition::Kind::True); }
SqlCondPtr sql_false() { return mk_cond(SqlCondition::Kind::False); }

namespace {

using detail::Cursor;

struct UnresolvedExpr {
  bool is_column = false;
  std::string table;   // qualifier, may be empty
  std::string column;  // name, or digits for a position
  Value literal;
  std::size_t pos = 0;  // source offset for messages
};

struct ResolveScope {
  const std::vector<SqlFromItem>* from = nullptr;
  const ResolveScope* outer = nullptr;
};

struct Parser {
  Cursor cur;
  Schema schema;

  explicit Parser(const std::string& text, const Schema& s) : cur(text), schema(s) {}

  // ---------------------------------------------------------------- script

  SqlScript script() {
    SqlScript out;
    while (!cur.eof()) {
      SqlStatement st;
      if (cur.try_keyword("create")) {
        cur.expect_keyword("table");
        st.create = std::make_shared<CreateTable>(create_table());
      } else {
        st.query = query(nullptr);
      }
      cur.expect_char(';');
      out.statements.push_back(std::move(st));
    }
    out.schema = schema;
    return out;
  }

  CreateTable create_table() {
    CreateTable ct;
    ct.table = cur.ident();
    cur.expect_char('(');
    bool more = true;
    while (more) {
      if (cur.try_keyword("constraint")) {
        SqlCheck check;
        check.name = cur.ident();
        cur.expect_keyword("check");
        cur.expect_char('(');
        check.condition = nullptr;  // resolved after the column list is known
        pending_checks_.push_back(cur.pos);
        skip_parenthesized();
        cur.expect_char(')');
        ct.checks.push_back(std::move(check));
      } else {
        SqlColumnDef col;
        col.name = cur.ident();
        if (cur.try_keyword("text"))
          col.spec.type = ColumnSpec::Type::Text;
        else if (cur.try_keyword("integer"))
          col.spec.type = ColumnSpec::Type::Int;
        else
          cur.fail("expected TEXT or INTEGER");
        col.spec.nullable = !cur.try_keyword("not");
        cur.expect_keyword("null");
        ct.columns.push_back(std::move(col));
      }
      more = cur.try_char(',');
    }
    cur.expect_char(')');
    if (ct.columns.empty()) cur.fail("CREATE TABLE needs at least one column");

    apply_create(ct);

    // now resolve the CHECK conditions against the finished table
    std::vector<SqlFromItem> pseudo_from(1);
    pseudo_from[0].alias = ct.table;
    pseudo_from[0].table = ct.table;
    pseudo_from[0].arity = static_cast<int>(ct.columns.size());
    for (const SqlColumnDef& c : ct.columns) pseudo_from[0].col_names.push_back(c.name);
    ResolveScope scope{&pseudo_from, nullptr};
    std::size_t save = cur.pos;
    for (std::size_t k = 0; k < ct.checks.size(); ++k) {
      cur.pos = pending_checks_[k];
      ct.checks[k].condition = condition(&scope);
      cur.expect_char(')');
      require_simple(ct.checks[k].condition);
    }
    pending_checks_.clear();
    cur.pos = save;
    return ct;
  }

  void apply_create(const CreateTable& ct) {
    int arity = static_cast<int>(ct.columns.size());
    std::vector<ColumnSpec> specs;
    std::vector<std::string> names;
    for (const SqlColumnDef& c : ct.columns) {
      specs.push_back(c.spec);
      names.push_back(c.name);
    }
    if (schema.has_relation(ct.table)) {
      if (schema.arity(ct.table) != arity)
        throw SqlError("CREATE TABLE " + ct.table + " does not match the instance arity");
      RelationDecl& decl = schema.relation_mut(ct.table);
      decl.columns = std::move(specs);
      decl.column_names = std::move(names);
    } else {
      RelationDecl decl;
      decl.arity = arity;
      decl.columns = std::move(specs);
      decl.column_names = std::move(names);
      schema.add_relation(ct.table, decl);
    }
  }

  void skip_parenthesized() {
    int depth = 1;
    while (depth > 0) {
      if (cur.eof()) cur.fail("unbalanced parentheses");
      if (cur.peek_quote()) {
        cur.quoted();
        continue;
      }
      char c = cur.peek();
      ++cur.pos;
      if (c == '(') ++depth;
      if (c == ')') --depth;
    }
    --cur.pos;  // leave the closing paren for the caller
  }

  // ---------------------------------------------------------------- queries

  SqlQueryPtr query(const ResolveScope* outer) {
    SqlQueryPtr q = query_operand(outer);
    while (true) {
      SqlQuery::Kind k;
      if (cur.try_keyword("union"))
        k = SqlQuery::Kind::Union;
      else if (cur.try_keyword("intersect"))
        k = SqlQuery::Kind::Intersect;
      else if (cur.try_keyword("except"))
        k = SqlQuery::Kind::Except;
      else
        break;
      SqlQueryPtr r = query_operand(outer);
      if (q->output_arity != r->output_arity)
        throw SqlError("set operation between different arities");
      auto setop = std::make_shared<SqlQuery>();
      setop->kind = k;
      setop->output_arity = q->output_arity;
      setop->output_names = q->output_names;
      setop->lhs = std::move(q);
      setop->rhs = std::move(r);
      q = setop;
    }
    return q;
  }

  SqlQueryPtr query_operand(const ResolveScope* outer) {
    if (cur.try_char('(')) {
      SqlQueryPtr q = query(outer);
      cur.expect_char(')');
      return q;
    }
    return select(outer);
  }

  SqlQueryPtr select(const ResolveScope* outer) {
    cur.expect_keyword("select");
    cur.try_keyword("distinct");  // set semantics either way
    std::vector<std::pair<UnresolvedExpr, std::string>> items;
    do {
      UnresolvedExpr e = unresolved_expr();
      std::string alias;
      if (cur.try_keyword("as")) alias = cur.ident();
      items.emplace_back(std::move(e), std::move(alias));
    } while (cur.try_char(','));

    cur.expect_keyword("from");
    auto q = std::make_shared<SqlQuery>();
    q->kind = SqlQuery::Kind::Select;
    do {
      SqlFromItem item;
      if (cur.try_char('(')) {
        // derived tables cannot see the enclosing rows
        item.subquery = query(nullptr);
        cur.expect_char(')');
        cur.expect_keyword("as");
        item.alias = cur.ident();
        item.arity = item.subquery->output_arity;
        item.col_names = item.subquery->output_names;
      } else {
        item.table = cur.ident();
        if (!schema.has_relation(item.table)) throw SqlError("unknown table " + item.table);
        item.arity = schema.arity(item.table);
        const auto& decl = schema.relation(item.table);
        if (decl.column_names)
          item.col_names = *decl.column_names;
        else
          item.col_names.assign(item.arity, "");
        item.alias = cur.try_keyword("as") ? cur.ident() : item.table;
      }
      for (const SqlFromItem& other : q->from)
        if (other.alias == item.alias) throw SqlError("duplicate FROM alias " + item.alias);
      q->from.push_back(std::move(item));
    } while (cur.try_char(','));

    ResolveScope scope{&q->from, outer};
    for (auto& [ue, alias] : items) {
      SqlSelectItem si;
      si.expr = resolve(ue, scope);
      si.alias = std::move(alias);
      q->select.push_back(std::move(si));
    }
    q->where = cur.try_keyword("where") ? condition(&scope) : sql_true();

    q->output_arity = static_cast<int>(q->select.size());
    for (const SqlSelectItem& si : q->select) {
      if (!si.alias.empty())
        q->output_names.push_back(si.alias);
      else if (si.expr.kind == SqlExpr::Kind::Column && si.expr.scope_up == 0)
        q->output_names.push_back(column_name_of(q->from, si.expr));
      else
        q->output_names.push_back("");
    }
    return q;
  }

  static std::string column_name_of(const std::vector<SqlFromItem>& from, const SqlExpr& e) {
    const SqlFromItem& item = from[e.from_index];
    const std::string& n = item.col_names[e.col_pos - 1];
    return n;
  }

  // ------------------------------------------------------------ expressions

  UnresolvedExpr unresolved_expr() {
    UnresolvedExpr e;
    e.pos = cur.pos;
    if (cur.try_keyword("null")) {
      e.literal = Value::null();
      return e;
    }
    if (cur.peek_quote()) {
      e.literal = Value::text(cur.quoted());
      return e;
    }
    if (cur.peek_int()) {
      e.literal = Value::integer(cur.integer());
      return e;
    }
    e.is_column = true;
    std::string first = cur.ident();
    if (cur.try_char('.')) {
      e.table = std::move(first);
      if (cur.peek_int())
        e.column = std::to_string(cur.integer());
      else
        e.column = cur.ident();
    } else {
      e.column = std::move(first);
    }
    return e;
  }

  SqlExpr resolve(const UnresolvedExpr& ue, const ResolveScope& scope) {
    if (!ue.is_column) {
      // a bare integer is a positional reference when exactly one current
      // FROM item is unnamed and wide enough; otherwise it is a literal
      if (ue.literal.kind() == Value::Kind::Int) {
        std::int64_t i = ue.literal.as_int();
        if (i >= 1) {
          int hits = 0, index = -1;
          for (std::size_t k = 0; k < scope.from->size(); ++k) {
            const SqlFromItem& item = (*scope.from)[k];
            bool unnamed = true;
            for (const std::string& n : item.col_names)
              if (!n.empty()) unnamed = false;
            if (unnamed && i <= item.arity) {
              ++hits;
              index = static_cast<int>(k);
            }
          }
          if (hits == 1)
            return SqlExpr::column(0, index, static_cast<int>(i),
                                   (*scope.from)[index].alias + "." + std::to_string(i));
          if (hits > 1) throw SqlError("ambiguous positional reference " + std::to_string(i));
        }
      }
      return SqlExpr::lit(ue.literal);
    }

    const ResolveScope* s = &scope;
    for (int up = 0; s; s = s->outer, ++up) {
      if (up > 1)
        throw SqlError("column " + ue.table + (ue.table.empty() ? "" : ".") + ue.column +
                       " reaches beyond one enclosing query");
      if (!ue.table.empty()) {
        for (std::size_t k = 0; k < s->from->size(); ++k) {
          const SqlFromItem& item = (*s->from)[k];
          if (item.alias != ue.table) continue;
          return SqlExpr::column(up, static_cast<int>(k), position_in(item, ue.column),
                                 ue.table + "." + ue.column);
        }
      } else {
        int hits = 0, index = -1, pos = 0;
        for (std::size_t k = 0; k < s->from->size(); ++k) {
          const SqlFromItem& item = (*s->from)[k];
          for (std::size_t c = 0; c < item.col_names.size(); ++c) {
            if (item.col_names[c] == ue.column) {
              ++hits;
              index = static_cast<int>(k);
              pos = static_cast<int>(c) + 1;
            }
          }
        }
        if (hits > 1) throw SqlError("ambiguous column " + ue.column);
        if (hits == 1) return SqlExpr::column(up, index, pos, ue.column);
      }
    }
    throw SqlError("unresolved column " + ue.table + (ue.table.empty() ? "" : ".") + ue.column);
  }

  int position_in(const SqlFromItem& item, const std::string& column) {
    bool digits = !column.empty() && column.find_first_not_of("0123456789") == std::string::npos;
    if (digits) {
      int p = std::stoi(column);
      if (p < 1 || p > item.arity)
        throw SqlError("position " + column + " outside " + item.alias + "/" +
                       std::to_string(item.arity));
      return p;
    }
    for (std::size_t c = 0; c < item.col_names.size(); ++c)
      if (item.col_names[c] == column) return static_cast<int>(c) + 1;
    throw SqlError("unresolved column " + item.alias + "." + column);
  }

  // ------------------------------------------------------------- conditions

  SqlCondPtr condition(const ResolveScope* scope) {
    SqlCondPtr c = cond_conj(scope);
    while (cur.try_keyword("or")) c = sql_or(std::move(c), cond_conj(scope));
    return c;
  }

  SqlCondPtr cond_conj(const ResolveScope* scope) {
    SqlCondPtr c = cond_unary(scope);
    while (cur.try_keyword("and")) c = sql_and(std::move(c), cond_unary(scope));
    return c;
  }

  SqlCondPtr cond_unary(const ResolveScope* scope) {
    if (cur.try_keyword("not")) {
      if (cur.try_keyword("exists")) return sql_exists(subquery(scope), true);
      return sql_not(cond_unary(scope));
    }
    if (cur.try_keyword("exists")) return sql_exists(subquery(scope), false);
    if (cur.try_char('(')) {
      // either a parenthesized condition or a parenthesized expression tuple
      std::size_t save = cur.pos;
      if (auto tuple = try_expr_tuple_rest(scope)) return comparison(*tuple, scope);
      cur.pos = save;
      SqlCondPtr c = condition(scope);
      cur.expect_char(')');
      return c;
    }
    std::vector<UnresolvedExpr> tuple = {unresolved_expr()};
    return comparison(tuple, scope);
  }

  // after '(': tries to read "e1, e2, ...)" followed by a comparison token
  std::optional<std::vector<UnresolvedExpr>> try_expr_tuple_rest(const ResolveScope*) {
    std::vector<UnresolvedExpr> tuple;
    try {
      do tuple.push_back(unresolved_expr());
      while (cur.try_char(','));
      if (!cur.try_char(')')) return std::nullopt;
    } catch (const detail::ParsePosError&) {
      return std::nullopt;
    }
    std::size_t save = cur.pos;
    bool follows = cur.try_char('=') || cur.try_keyword("is") || cur.try_keyword("in") ||
                   cur.try_keyword("not");
    if (!follows && cur.try_char('!')) follows = true;
    cur.pos = save;
    return follows ? std::optional(std::move(tuple)) : std::nullopt;
  }

  SqlCondPtr comparison(const std::vector<UnresolvedExpr>& lhs_u, const ResolveScope* scope) {
    std::vector<SqlExpr> lhs;
    lhs.reserve(lhs_u.size());
    for (const UnresolvedExpr& e : lhs_u) lhs.push_back(resolve(e, *scope));

    if (cur.try_keyword("is")) {
      bool neg = cur.try_keyword("not");
      cur.expect_keyword("null");
      if (lhs.size() != 1) throw SqlError("IS NULL applies to a single expression");
      return sql_is_null(lhs[0], neg);
    }
    bool neg_in = false;
    if (cur.try_keyword("not")) {
      cur.expect_keyword("in");
      neg_in = true;
    } else if (cur.try_keyword("in")) {
      neg_in = false;
    } else {
      bool neq = false;
      if (cur.try_char('!')) {
        cur.expect_char('=');
        neq = true;
      } else {
        cur.expect_char('=');
      }
      std::vector<SqlExpr> rhs;
      if (cur.try_char('(')) {
        do rhs.push_back(resolve(unresolved_expr(), *scope));
        while (cur.try_char(','));
        cur.expect_char(')');
      } else {
        rhs.push_back(resolve(unresolved_expr(), *scope));
      }
      return sql_cmp(neq ? SqlCondition::CmpOp::Neq : SqlCondition::CmpOp::Eq, std::move(lhs),
                     std::move(rhs));
    }
    // IN / NOT IN
    cur.expect_char('(');
    std::size_t save = cur.pos;
    if (cur.try_keyword("select") || cur.peek() == '(') {
      cur.pos = save;
      SqlQueryPtr q = query(scope);
      cur.expect_char(')');
      return sql_in(std::move(lhs), std::move(q), neg_in);
    }
    std::vector<SqlExpr> list;
    do list.push_back(resolve(unresolved_expr(), *scope));
    while (cur.try_char(','));
    cur.expect_char(')');
    return sql_in_list(std::move(lhs), std::move(list), neg_in);
  }

  SqlQueryPtr subquery(const ResolveScope* scope) {
    cur.expect_char('(');
    SqlQueryPtr q = query(scope);
    cur.expect_char(')');
    return q;
  }

  // CHECK takes only simple conditions: comparisons under boolean operators
  static void require_simple(const SqlCondPtr& c) {
    switch (c->kind) {
      case SqlCondition::Kind::Cmp:
      case SqlCondition::Kind::IsNull:
      case SqlCondition::Kind::IsNotNull:
      case SqlCondition::Kind::True:
      case SqlCondition::Kind::False: return;
      case SqlCondition::Kind::Not: require_simple(c->lhs); return;
      case SqlCondition::Kind::And:
      case SqlCondition::Kind::Or:
        require_simple(c->lhs);
        require_simple(c->rhs);
        return;
      default: throw SqlError("CHECK accepts only simple conditions");
    }
  }

  std::vector<std::size_t> pending_checks_;
};

}  // namespace

SqlScript parse_sql(const std::string& text, const Schema& schema) {
  Parser p(text, schema);
  try {
    return p.script();
  } catch (const detail::ParsePosError& e) {
    throw SqlError(e.what());
  }
}

SqlQueryPtr parse_sql_query(const std::string& text, const Schema& schema) {
  SqlScript script = parse_sql(text, schema);
  if (script.statements.size() != 1 || !script.statements[0].query)
    throw SqlError("expected exactly one query statement");
  return script.statements[0].query;
}

}  // namespace nullrel
