#ifndef NULLREL_SQLFO_HPP
#define NULLREL_SQLFO_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nullrel/instance.hpp"
#include "nullrel/nra.hpp"

namespace nullrel {

struct SqlError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Three-valued truth: WHERE keeps only rows whose condition is True.
enum class Truth3 { True, False, Unknown };

Truth3 t3_not(Truth3 a);
Truth3 t3_and(Truth3 a, Truth3 b);
Truth3 t3_or(Truth3 a, Truth3 b);

// Resolved scalar expression: a column reference addressed by enclosing-scope
// hops, FROM item and 1-based position, or a literal (possibly NULL).
struct SqlExpr {
  enum class Kind { Column, Literal };
  Kind kind = Kind::Literal;
  int scope_up = 0;
  int from_index = 0;
  int col_pos = 1;
  std::string display;  // original text of a column reference
  Value literal;

  static SqlExpr column(int scope_up, int from_index, int col_pos, std::string display = "");
  static SqlExpr lit(Value v);
};

struct SqlQuery;
using SqlQueryPtr = std::shared_ptr<const SqlQuery>;
struct SqlCondition;
using SqlCondPtr = std::shared_ptr<const SqlCondition>;

struct SqlCondition {
  enum class Kind {
    Cmp,        // tuple comparison
    IsNull,     // unary
    IsNotNull,  // unary
    Exists,
    NotExists,
    In,
    NotIn,
    Not,
    And,
    Or,
    True,
    False,
  };
  // = and != evaluate under 3VL; the 2VL forms appear only after rewriting
  // and are true exactly when the 3VL form is true.
  enum class CmpOp { Eq, Neq, Eq2vl, Neq2vl };

  Kind kind;
  CmpOp op = CmpOp::Eq;
  std::vector<SqlExpr> lhs_tuple;  // Cmp lhs; IsNull operand; In lhs
  std::vector<SqlExpr> rhs_tuple;  // Cmp rhs; In literal list
  bool rhs_is_list = false;        // In/NotIn: literal list vs subquery
  SqlQueryPtr query;               // Exists/NotExists/In/NotIn subquery
  SqlCondPtr lhs, rhs;             // Not (lhs only), And, Or
};

SqlCondPtr sql_cmp(SqlCondition::CmpOp op, std::vector<SqlExpr> l, std::vector<SqlExpr> r);
SqlCondPtr sql_is_null(SqlExpr e, bool negated);
SqlCondPtr sql_exists(SqlQueryPtr q, bool negated);
SqlCondPtr sql_in(std::vector<SqlExpr> tuple, SqlQueryPtr q, bool negated);
SqlCondPtr sql_in_list(std::vector<SqlExpr> tuple, std::vector<SqlExpr> list, bool negated);
SqlCondPtr sql_not(SqlCondPtr c);
SqlCondPtr sql_and(SqlCondPtr a, SqlCondPtr b);
SqlCondPtr sql_or(SqlCondPtr a, SqlCondPtr b);
SqlCondPtr sql_true();
SqlCondPtr sql_false();

struct SqlSelectItem {
  SqlExpr expr;
  std::string alias;  // may be empty
};

struct SqlFromItem {
  std::string alias;
  std::string table;    // base table, empty for a derived table
  SqlQueryPtr subquery;  // derived table
  int arity = 0;
  std::vector<std::string> col_names;  // "" for unnamed positions
};

struct SqlQuery {
  enum class Kind { Select, Union, Intersect, Except };
  Kind kind = Kind::Select;
  std::vector<SqlSelectItem> select;
  std::vector<SqlFromItem> from;
  SqlCondPtr where;  // sql_true() when absent
  SqlQueryPtr lhs, rhs;
  int output_arity = 0;
  std::vector<std::string> output_names;
};

struct SqlColumnDef {
  std::string name;
  ColumnSpec spec;
};

struct SqlCheck {
  std::string name;
  SqlCondPtr condition;  // resolved against the table as single FROM item
};

struct CreateTable {
  std::string table;
  std::vector<SqlColumnDef> columns;
  std::vector<SqlCheck> checks;
};

struct SqlStatement {
  SqlQueryPtr query;                  // exactly one of the two is set
  std::shared_ptr<CreateTable> create;
};

// Parses a script of ;-terminated statements and resolves every column
// reference. CREATE TABLE statements extend/annotate the schema for the
// statements after them: names map to positions in declaration order, and a
// new table starts out empty. Column references resolve against the current
// FROM items by declared name, by table-qualified name or position
// (t.name, t.2), or as a bare position over a single unnamed FROM item;
// reaching further than one enclosing scope is an error.
struct SqlScript {
  std::vector<SqlStatement> statements;
  Schema schema;  // input schema plus CREATE TABLE effects
};

SqlScript parse_sql(const std::string& text, const Schema& schema);

// Single-query convenience; the text must hold exactly one query statement.
SqlQueryPtr parse_sql_query(const std::string& text, const Schema& schema);

// Row context for condition evaluation: one row per FROM item of each
// enclosing select.
struct RowScope {
  const SqlQuery* select = nullptr;
  std::vector<const TotalTuple*> rows;
  const RowScope* outer = nullptr;
};

Truth3 eval_3vl(const SqlCondPtr& c, const RowScope& scope, const InstanceN& inst);

// Reference semantics: enumerate the FROM product, keep rows whose condition
// is 3VL-true, project with DISTINCT, apply set operations.
Relation exec_sql(const SqlQueryPtr& q, const InstanceN& inst);

// Absorbed negation normal form: negation-free combination of (possibly
// negation-absorbed) atomic conditions, equivalent under 3VL.
SqlCondPtr to_annf(const SqlCondPtr& c);

// Classical-logic form: conditions in ANNF with every atomic condition
// encoded through the 2VL comparisons, IS (NOT) NULL and (NOT) EXISTS.
// Evaluating the result under 2VL equals the original query under 3VL.
SqlQueryPtr rewrite_2vl(const SqlQueryPtr& q);

// Algebra compilation of a (2VL-rewritten) query; the output contains no
// zero-ary projection and evaluates to exec_sql's result on every instance.
NraPtr compile_to_nra(const SqlQueryPtr& q, const Schema& schema);

// CHECK (simple-condition) holds iff no row makes the condition 3VL-false.
bool check_sql_check(const InstanceN& inst, const std::string& table, const SqlCondPtr& cond);

std::string to_string(const SqlQueryPtr& q);
std::string to_string(const SqlCondPtr& c);

bool sql_query_equal(const SqlQueryPtr& a, const SqlQueryPtr& b);
bool sql_cond_equal(const SqlCondPtr& a, const SqlCondPtr& b);

}  // namespace nullrel

#endif
