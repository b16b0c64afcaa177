#include "nullrel/nra_parser.hpp"

#include "parse_util.hpp"

namespace nullrel {

namespace {

using detail::Cursor;

struct Parser {
  Cursor cur;

  explicit Parser(const std::string& text) : cur(text) {}

  NraPtr expr() {
    if (cur.try_keyword("rel")) return nra_relation(cur.ident());
    if (cur.try_keyword("singleton")) return nra_singleton(value());
    if (cur.try_keyword("sel")) {
      cur.expect_char('[');
      SelCondPtr c = cond();
      cur.expect_char(']');
      cur.expect_char('(');
      NraPtr e = expr();
      cur.expect_char(')');
      return nra_select(std::move(c), std::move(e));
    }
    if (cur.try_keyword("proj")) {
      cur.expect_char('[');
      std::vector<int> cols;
      if (!cur.try_char(']')) {
        do cols.push_back(static_cast<int>(cur.integer()));
        while (cur.try_char(','));
        cur.expect_char(']');
      }
      cur.expect_char('(');
      NraPtr e = expr();
      cur.expect_char(')');
      return nra_project(std::move(cols), std::move(e));
    }
    if (cur.try_keyword("join")) return join(false);
    if (cur.try_keyword("louter")) return join(true);
    if (cur.try_char('(')) {
      NraPtr l = expr();
      NraPtr e;
      if (cur.try_keyword("x"))
        e = nra_product(std::move(l), expr());
      else if (cur.try_keyword("union"))
        e = nra_union(std::move(l), expr());
      else if (cur.try_keyword("minus"))
        e = nra_diff(std::move(l), expr());
      else if (cur.try_keyword("intersect"))
        e = nra_intersect(std::move(l), expr());
      else
        cur.fail("expected x, union, minus or intersect");
      cur.expect_char(')');
      return e;
    }
    cur.fail("expected an algebra expression");
  }

  NraPtr join(bool outer) {
    cur.expect_char('[');
    std::vector<std::pair<int, int>> on;
    if (!cur.try_char(']')) {
      do {
        int i = static_cast<int>(cur.integer());
        cur.expect_char('=');
        int k = static_cast<int>(cur.integer());
        on.emplace_back(i, k);
      } while (cur.try_char(','));
      cur.expect_char(']');
    }
    cur.expect_char('(');
    NraPtr l = expr();
    cur.expect_char(',');
    NraPtr r = expr();
    cur.expect_char(')');
    return outer ? nra_left_outer_join(std::move(on), std::move(l), std::move(r))
                 : nra_join(std::move(on), std::move(l), std::move(r));
  }

  Value value() {
    if (cur.try_keyword("null")) return Value::null();
    if (cur.peek_quote()) return Value::text(cur.quoted());
    if (cur.try_char('#')) return Value::integer(cur.integer());
    if (cur.peek_int()) return Value::integer(cur.integer());
    cur.fail("expected a value");
  }

  SelCondPtr cond() {
    SelCondPtr c = cond_conj();
    while (cur.try_keyword("or")) c = cond_or(std::move(c), cond_conj());
    return c;
  }

  SelCondPtr cond_conj() {
    SelCondPtr c = cond_unary();
    while (cur.try_keyword("and")) c = cond_and(std::move(c), cond_unary());
    return c;
  }

  SelCondPtr cond_unary() {
    if (cur.try_keyword("not")) return cond_not(cond_unary());
    if (cur.try_char('(')) {
      SelCondPtr c = cond();
      cur.expect_char(')');
      return c;
    }
    if (cur.try_keyword("isNull")) {
      cur.expect_char('(');
      int i = static_cast<int>(cur.integer());
      cur.expect_char(')');
      return cond_is_null(i);
    }
    if (cur.try_keyword("isNotNull")) {
      cur.expect_char('(');
      int i = static_cast<int>(cur.integer());
      cur.expect_char(')');
      return cond_is_not_null(i);
    }
    int i = static_cast<int>(cur.integer());
    bool neq = false;
    if (cur.try_char('!')) {
      cur.expect_char('=');
      neq = true;
    } else {
      cur.expect_char('=');
    }
    // A bare integer on the right is a column reference; constants carry a
    // # prefix or quotes, the null marker is spelled NULL.
    if (cur.try_keyword("null")) return neq ? cond_neq_null(i) : cond_eq_null(i);
    if (cur.peek_quote()) {
      Value v = Value::text(cur.quoted());
      return neq ? cond_neq_const(i, std::move(v)) : cond_eq_const(i, std::move(v));
    }
    if (cur.try_char('#')) {
      Value v = Value::integer(cur.integer());
      return neq ? cond_neq_const(i, std::move(v)) : cond_eq_const(i, std::move(v));
    }
    int j = static_cast<int>(cur.integer());
    return neq ? cond_neq_cols(i, j) : cond_eq_cols(i, j);
  }
};

}  // namespace

NraPtr parse_nra(const std::string& text) {
  Parser p(text);
  NraPtr e = p.expr();
  p.cur.expect_eof();
  return e;
}

}  // namespace nullrel
