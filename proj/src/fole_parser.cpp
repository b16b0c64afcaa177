#include "nullrel/fole_parser.hpp"

#include "parse_util.hpp"

namespace nullrel {

namespace {

using detail::Cursor;

struct Parser {
  Cursor cur;

  explicit Parser(const std::string& text) : cur(text) {}

  FormulaPtr formula() { return quantified(); }

  FormulaPtr quantified() {
    bool ex = false;
    if (cur.try_keyword("exists"))
      ex = true;
    else if (!cur.try_keyword("forall"))
      return disjunction();
    std::vector<std::string> vars;
    do vars.push_back(cur.ident());
    while (cur.try_char(','));
    cur.expect_char('.');
    FormulaPtr body = quantified();
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      body = ex ? f_exists(*it, std::move(body)) : f_forall(*it, std::move(body));
    return body;
  }

  FormulaPtr disjunction() {
    FormulaPtr f = conjunction();
    while (cur.try_keyword("or")) f = f_or(std::move(f), conjunction());
    return f;
  }

  FormulaPtr conjunction() {
    FormulaPtr f = unary();
    while (cur.try_keyword("and")) f = f_and(std::move(f), unary());
    return f;
  }

  FormulaPtr unary() {
    if (cur.try_keyword("not")) return f_not(unary());
    if (cur.try_keyword("true")) return f_true();
    if (cur.try_keyword("false")) return f_false();
    std::size_t save = cur.pos;
    if (cur.try_keyword("exists") || cur.try_keyword("forall")) {
      // quantifier in an operand position, e.g. "f and exists x. g"
      cur.pos = save;
      return quantified();
    }
    if (cur.try_char('(')) {
      FormulaPtr f = formula();
      cur.expect_char(')');
      return f;
    }
    return atom_or_eq();
  }

  FormulaPtr atom_or_eq() {
    // constants can open an equality
    if (cur.peek_quote()) return finish_eq(FoleTerm::constant(Value::text(cur.quoted())));
    if (cur.peek_int()) return finish_eq(FoleTerm::constant(Value::integer(cur.integer())));
    if (cur.try_keyword("null"))
      throw FoleError("the null term cannot appear in an equality");

    std::string name = cur.ident();
    if (cur.try_char('~')) {
      cur.expect_char('{');
      std::vector<int> positions;
      if (!cur.try_char('}')) {
        do positions.push_back(static_cast<int>(cur.integer()));
        while (cur.try_char(','));
        cur.expect_char('}');
      }
      std::vector<FoleTerm> terms;
      if (cur.try_char('(')) {
        if (!cur.try_char(')')) {
          do terms.push_back(term());
          while (cur.try_char(','));
          cur.expect_char(')');
        }
      }
      return f_atom_decomposed(std::move(name), std::move(positions), std::move(terms));
    }
    if (cur.try_char('(')) {
      std::vector<FoleTerm> terms;
      if (!cur.try_char(')')) {
        do terms.push_back(term());
        while (cur.try_char(','));
        cur.expect_char(')');
      }
      return f_atom(std::move(name), std::move(terms));
    }
    // bare identifier: a variable opening an equality
    return finish_eq(FoleTerm::variable(std::move(name)));
  }

  FormulaPtr finish_eq(FoleTerm lhs) {
    cur.expect_char('=');
    return f_eq(std::move(lhs), term_no_null());
  }

  FoleTerm term() {
    if (cur.try_keyword("null")) return FoleTerm::null();
    return term_no_null();
  }

  FoleTerm term_no_null() {
    if (cur.try_keyword("null"))
      throw FoleError("the null term cannot appear in an equality");
    if (cur.peek_quote()) return FoleTerm::constant(Value::text(cur.quoted()));
    if (cur.peek_int()) return FoleTerm::constant(Value::integer(cur.integer()));
    return FoleTerm::variable(cur.ident());
  }
};

}  // namespace

FormulaPtr parse_fole(const std::string& text) {
  Parser p(text);
  FormulaPtr f = p.formula();
  p.cur.expect_eof();
  return f;
}

}  // namespace nullrel
