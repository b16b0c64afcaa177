#include <doctest.h>

#include "nullrel/instance_io.hpp"
#include "nullrel/sqlfo.hpp"
#include "sql_gen.hpp"
#include "support.hpp"

using namespace nullrel;
using namespace testsupport;

namespace {

Value A = Value::text("a");
Value B = Value::text("b");
Value N = Value::null();

// the introduction's table: r(c1 TEXT NOT NULL, c2 TEXT NULL)
const char* kCreateR = "CREATE TABLE r ( c1 TEXT NOT NULL, c2 TEXT NULL );";

InstanceN intro_instance() {
  InstanceN i;
  i.schema.add_relation("r", RelationDecl{2});
  i.insert("r", {A, A});
  i.insert("r", {B, N});
  return i;
}

SqlQueryPtr named_query(const std::string& sql, const InstanceN& inst) {
  SqlScript script = parse_sql(std::string(kCreateR) + " " + sql, inst.schema);
  return script.statements.back().query;
}

}  // namespace

TEST_CASE("three-valued truth tables, all 21 entries") {
  using T3 = Truth3;
  const T3 T = T3::True, F = T3::False, U = T3::Unknown;
  // negation
  CHECK(t3_not(T) == F);
  CHECK(t3_not(F) == T);
  CHECK(t3_not(U) == U);
  // conjunction
  CHECK(t3_and(T, T) == T);
  CHECK(t3_and(T, F) == F);
  CHECK(t3_and(T, U) == U);
  CHECK(t3_and(F, T) == F);
  CHECK(t3_and(F, F) == F);
  CHECK(t3_and(F, U) == F);
  CHECK(t3_and(U, T) == U);
  CHECK(t3_and(U, F) == F);
  CHECK(t3_and(U, U) == U);
  // disjunction
  CHECK(t3_or(T, T) == T);
  CHECK(t3_or(T, F) == T);
  CHECK(t3_or(T, U) == T);
  CHECK(t3_or(F, T) == T);
  CHECK(t3_or(F, F) == F);
  CHECK(t3_or(F, U) == U);
  CHECK(t3_or(U, T) == T);
  CHECK(t3_or(U, F) == U);
  CHECK(t3_or(U, U) == U);
}

TEST_CASE("the introduction quartet under reference semantics") {
  InstanceN i = intro_instance();
  CHECK(exec_sql(named_query("SELECT DISTINCT c1, c2 FROM r WHERE c1 = c1 AND c2 = c2;", i), i) ==
        Relation{{A, A}});
  CHECK(exec_sql(named_query("SELECT DISTINCT c1, c2 FROM r WHERE c1 = NULL;", i), i).empty());
  CHECK(exec_sql(named_query("SELECT DISTINCT c2 FROM r;", i), i) == Relation{{A}, {N}});
  CHECK(exec_sql(named_query("SELECT DISTINCT c2 FROM r WHERE c2 = c2;", i), i) == Relation{{A}});
}

TEST_CASE("the quartet again through the algebra compiler") {
  InstanceN i = intro_instance();
  const char* queries[] = {
      "SELECT DISTINCT c1, c2 FROM r WHERE c1 = c1 AND c2 = c2;",
      "SELECT DISTINCT c1, c2 FROM r WHERE c1 = NULL;",
      "SELECT DISTINCT c2 FROM r;",
      "SELECT DISTINCT c2 FROM r WHERE c2 = c2;",
  };
  Relation expected[] = {{{A, A}}, {}, {{A}, {N}}, {{A}}};
  for (int k = 0; k < 4; ++k) {
    SqlQueryPtr q = named_query(queries[k], i);
    CHECK(exec_sql(q, i) == expected[k]);
    CHECK(eval_nra(compile_to_nra(q, i.schema), i) == expected[k]);
  }
}

TEST_CASE("WHERE c1 IS NULL matches WHERE c1 = NULL on the example") {
  InstanceN i = intro_instance();
  CHECK(exec_sql(named_query("SELECT DISTINCT c1, c2 FROM r WHERE c1 IS NULL;", i), i).empty());
  CHECK(exec_sql(named_query("SELECT DISTINCT c1, c2 FROM r WHERE c2 IS NULL;", i), i) ==
        Relation{{B, N}});
}

TEST_CASE("3VL evaluation of the running conditions") {
  InstanceN i = intro_instance();
  SqlQueryPtr q = named_query("SELECT DISTINCT c1 FROM r WHERE c1 = c1 AND c2 = c2;", i);
  RowScope scope;
  scope.select = q.get();
  TotalTuple good{A, A}, bad{B, N};
  scope.rows = {&good};
  CHECK(eval_3vl(q->where, scope, i) == Truth3::True);
  scope.rows = {&bad};
  CHECK(eval_3vl(q->where, scope, i) == Truth3::Unknown);
}

TEST_CASE("IN over a value list") {
  InstanceN i = intro_instance();
  CHECK(exec_sql(named_query("SELECT DISTINCT c1 FROM r WHERE c1 IN ('a', 'b');", i), i) ==
        Relation{{A}, {B}});
  // c2 of the null row is NULL: membership unknown, row filtered
  CHECK(exec_sql(named_query("SELECT DISTINCT c1 FROM r WHERE c2 IN ('a', 'b');", i), i) ==
        Relation{{A}});
  // NOT IN with a null candidate can never be definitely true
  CHECK(exec_sql(named_query("SELECT DISTINCT c1 FROM r WHERE c1 NOT IN ('z', NULL);", i), i)
            .empty());
}

TEST_CASE("normalization pushes negations and absorbs them") {
  InstanceN i = intro_instance();
  // NOT (a != b AND t NOT IN (q))  becomes  a = b OR t IN (q)
  SqlQueryPtr q = named_query(
      "SELECT DISTINCT c1 FROM r WHERE NOT (c1 != c2 AND c1 NOT IN (SELECT DISTINCT c1 FROM r));",
      i);
  SqlQueryPtr want = named_query(
      "SELECT DISTINCT c1 FROM r WHERE c1 = c2 OR c1 IN (SELECT DISTINCT c1 FROM r);", i);
  CHECK(sql_cond_equal(to_annf(q->where), want->where));
  // atomic conditions stay put
  SqlQueryPtr atom = named_query("SELECT DISTINCT c1 FROM r WHERE c1 = 'a';", i);
  CHECK(sql_cond_equal(to_annf(atom->where), atom->where));
}

TEST_CASE("normalization preserves 3VL truth and stays linear") {
  Rng rng(505);
  std::vector<Value> domv = small_domain(3);
  for (int it = 0; it < 300; ++it) {
    InstanceN inst = random_instance(rng);
    SqlGen gen{rng, inst.schema, domv};
    SqlGenScope scope;
    std::vector<std::string> rels;
    for (const auto& [name, decl] : inst.schema.relations())
      scope.tables.emplace_back(name, decl.arity);
    std::string text = "SELECT DISTINCT 'k' FROM ";
    for (std::size_t k = 0; k < scope.tables.size(); ++k)
      text += (k ? ", " : "") + scope.tables[k].first;
    text += " WHERE " + gen.condition(scope, 1, 3) + ";";
    SqlQueryPtr q;
    try {
      q = parse_sql_query(text, inst.schema);
    } catch (const SqlError&) {
      continue;
    }
    SqlCondPtr norm = to_annf(q->where);

    // size grows at most linearly (negations only get absorbed)
    std::function<std::size_t(const SqlCondPtr&)> size = [&](const SqlCondPtr& c) -> std::size_t {
      if (!c) return 0;
      std::size_t n = 1 + size(c->lhs) + size(c->rhs);
      return n;
    };
    CHECK(size(norm) <= 2 * size(q->where) + 1);

    // equal truth value on every row of the product
    Relation rows;
    {
      SqlQueryPtr all = parse_sql_query(
          [&] {
            std::string t = "SELECT DISTINCT ";
            int col = 0;
            for (auto& [alias, arity] : scope.tables)
              for (int c = 1; c <= arity; ++c)
                t += (col++ ? ", " : "") + alias + ("." + std::to_string(c));
            t += " FROM ";
            for (std::size_t k = 0; k < scope.tables.size(); ++k)
              t += (k ? ", " : "") + scope.tables[k].first;
            return t + ";";
          }(),
          inst.schema);
      rows = exec_sql(all, inst);
    }
    for (const TotalTuple& row : rows) {
      RowScope rs;
      rs.select = q.get();
      std::vector<TotalTuple> parts;
      std::size_t off = 0;
      for (auto& [alias, arity] : scope.tables) {
        parts.emplace_back(row.begin() + off, row.begin() + off + arity);
        off += arity;
      }
      for (const TotalTuple& p : parts) rs.rows.push_back(&p);
      CHECK(eval_3vl(q->where, rs, inst) == eval_3vl(norm, rs, inst));
    }
  }
}

TEST_CASE("the pseudo-identity rewrite uses the 2VL comparisons") {
  InstanceN i = intro_instance();
  SqlQueryPtr q = named_query("SELECT DISTINCT c1, c2 FROM r WHERE c1 = c1 AND c2 = c2;", i);
  SqlQueryPtr r = rewrite_2vl(q);
  const SqlCondPtr& w = r->where;
  REQUIRE(w->kind == SqlCondition::Kind::And);
  CHECK(w->lhs->kind == SqlCondition::Kind::Cmp);
  CHECK(w->lhs->op == SqlCondition::CmpOp::Eq2vl);
  CHECK(w->rhs->op == SqlCondition::CmpOp::Eq2vl);
}

TEST_CASE("NOT IN against a list becomes a 2VL conjunction") {
  InstanceN i = intro_instance();
  SqlQueryPtr q = named_query("SELECT DISTINCT c1 FROM r WHERE c1 NOT IN ('a', 'b');", i);
  SqlQueryPtr r = rewrite_2vl(q);
  const SqlCondPtr& w = r->where;
  REQUIRE(w->kind == SqlCondition::Kind::And);
  CHECK(w->lhs->op == SqlCondition::CmpOp::Neq2vl);
  CHECK(w->rhs->op == SqlCondition::CmpOp::Neq2vl);
}

TEST_CASE("the worked citizenship query rewrites to the displayed form") {
  Schema s;
  InstanceN i;
  // person(name, passport, cityofbirth), city(name, country)
  SqlScript defs = parse_sql(
      "CREATE TABLE person ( name TEXT NOT NULL, passport TEXT NULL, cityofbirth TEXT NULL );"
      "CREATE TABLE city ( name TEXT NOT NULL, country TEXT NULL );",
      s);
  SqlScript script = parse_sql(
      "SELECT DISTINCT person.name FROM person "
      "WHERE NOT (person.passport != 'Italian' AND person.cityofbirth NOT IN "
      "  (SELECT DISTINCT city.name FROM city WHERE city.country = 'Italy'));",
      defs.schema);
  SqlQueryPtr rewritten = rewrite_2vl(script.statements[0].query);

  // the displayed two-valued query, built over the same schema
  SqlScript expect = parse_sql(
      "SELECT DISTINCT person.name FROM person "
      "WHERE person.passport = 'Italian' OR "
      "  EXISTS (SELECT DISTINCT italiancity.1 FROM "
      "            (SELECT DISTINCT city.name FROM city WHERE city.country = 'Italy') "
      "            AS italiancity "
      "          WHERE person.cityofbirth = italiancity.1);",
      defs.schema);
  // ... whose comparisons are the 2VL ones
  std::function<SqlCondPtr(const SqlCondPtr&)> to2vl = [&](const SqlCondPtr& c) -> SqlCondPtr {
    auto out = std::make_shared<SqlCondition>(*c);
    if (c->lhs) out->lhs = to2vl(c->lhs);
    if (c->rhs) out->rhs = to2vl(c->rhs);
    if (c->kind == SqlCondition::Kind::Cmp && c->op == SqlCondition::CmpOp::Eq)
      out->op = SqlCondition::CmpOp::Eq2vl;
    if (c->query) {
      auto q2 = std::make_shared<SqlQuery>(*c->query);
      q2->where = to2vl(c->query->where);
      if (q2->from.size() == 1 && q2->from[0].subquery) {
        auto sub = std::make_shared<SqlQuery>(*q2->from[0].subquery);
        sub->where = to2vl(sub->where);
        q2->from[0].subquery = sub;
      }
      out->query = q2;
    }
    return out;
  };
  auto expected_q = std::make_shared<SqlQuery>(*expect.statements[0].query);
  expected_q->where = to2vl(expected_q->where);
  CHECK(sql_query_equal(rewritten, SqlQueryPtr(expected_q)));

  // and both run identically on data
  InstanceN data;
  data.schema = defs.schema;
  data.insert("person", {Value::text("p1"), Value::text("Italian"), N});
  data.insert("person", {Value::text("p2"), N, Value::text("Rome")});
  data.insert("person", {Value::text("p3"), N, N});
  data.insert("person", {Value::text("p4"), Value::text("French"), Value::text("Paris")});
  data.insert("city", {Value::text("Rome"), Value::text("Italy")});
  data.insert("city", {Value::text("Paris"), Value::text("France")});
  Relation want{{Value::text("p1")}, {Value::text("p2")}};
  CHECK(exec_sql(script.statements[0].query, data) == want);
  CHECK(exec_sql(rewritten, data) == want);
  CHECK(eval_nra(compile_to_nra(script.statements[0].query, data.schema), data) == want);
}

TEST_CASE("WHERE-clause equivalence on random conditions") {
  Rng rng(606);
  std::vector<Value> domv = small_domain(3);
  int cases = 0;
  for (int it = 0; it < 250; ++it) {
    InstanceN inst = random_instance(rng);
    SqlGen gen{rng, inst.schema, domv};
    SqlGenScope scope;
    for (const auto& [name, decl] : inst.schema.relations())
      scope.tables.emplace_back(name, decl.arity);
    std::string text = "SELECT DISTINCT 'k' FROM ";
    for (std::size_t k = 0; k < scope.tables.size(); ++k)
      text += (k ? ", " : "") + scope.tables[k].first;
    text += " WHERE " + gen.condition(scope, 1, 2) + ";";
    SqlQueryPtr q;
    try {
      q = parse_sql_query(text, inst.schema);
    } catch (const SqlError&) {
      continue;
    }
    SqlQueryPtr rewritten = rewrite_2vl(q);
    // the rewritten query: same rows, and its condition never evaluates to
    // unknown (each encoded atom is two-valued)
    CHECK(exec_sql(q, inst) == exec_sql(rewritten, inst));
    ++cases;
  }
  CHECK(cases >= 150);
}

TEST_CASE("reference execution matches the compiled algebra on random queries") {
  Rng rng(707);
  std::vector<Value> domv = small_domain(3);
  int cases = 0, divergences = 0;
  for (int it = 0; it < 300; ++it) {
    InstanceN inst = random_instance(rng);
    SqlGen gen{rng, inst.schema, domv};
    std::string text = gen.query(2);
    SqlQueryPtr q;
    try {
      q = parse_sql_query(text, inst.schema);
    } catch (const SqlError&) {
      continue;
    }
    ++cases;
    Relation ref = exec_sql(q, inst);
    Relation alg = eval_nra(compile_to_nra(q, inst.schema), inst);
    if (ref != alg) {
      ++divergences;
      CAPTURE(text);
      CHECK(ref == alg);
    }
  }
  CHECK(cases >= 200);
  CHECK(divergences == 0);
}

TEST_CASE("null-free data makes both logics agree cell for cell") {
  Rng rng(808);
  std::vector<Value> domv = small_domain(3);
  InstanceOptions opt;
  opt.null_prob = 0.0;
  for (int it = 0; it < 80; ++it) {
    InstanceN inst = random_instance(rng, opt);
    SqlGen gen{rng, inst.schema, domv};
    std::string text = gen.query(1);
    SqlQueryPtr q;
    try {
      q = parse_sql_query(text, inst.schema);
    } catch (const SqlError&) {
      continue;
    }
    CHECK(exec_sql(q, inst) == exec_sql(rewrite_2vl(q), inst));
  }
}

TEST_CASE("set operations and duplicate selections") {
  InstanceN i = intro_instance();
  CHECK(exec_sql(named_query("SELECT DISTINCT c1 FROM r UNION SELECT DISTINCT c2 FROM r;", i),
                 i) == Relation{{A}, {B}, {N}});
  CHECK(exec_sql(named_query("SELECT DISTINCT c1 FROM r INTERSECT SELECT DISTINCT c2 FROM r;", i),
                 i) == Relation{{A}});
  CHECK(exec_sql(named_query("SELECT DISTINCT c1 FROM r EXCEPT SELECT DISTINCT c2 FROM r;", i),
                 i) == Relation{{B}});
  // duplicate selection keeps nulls paired with themselves
  SqlQueryPtr dup = named_query("SELECT DISTINCT c2, c2 FROM r;", i);
  Relation want{{A, A}, {N, N}};
  CHECK(exec_sql(dup, i) == want);
  CHECK(eval_nra(compile_to_nra(dup, i.schema), i) == want);
}

TEST_CASE("resolution and arity errors") {
  InstanceN i = intro_instance();
  CHECK_THROWS_AS(parse_sql("SELECT DISTINCT nosuch FROM r;", i.schema), SqlError);
  CHECK_THROWS_AS(parse_sql("SELECT DISTINCT r.1 FROM r WHERE EXISTS (SELECT DISTINCT q.1 FROM q);",
                            i.schema),
                  SqlError);
  CHECK_THROWS_AS(parse_sql("SELECT DISTINCT r.1 FROM r WHERE (r.1, r.2) = r.1;", i.schema),
                  SqlError);
  CHECK_THROWS_AS(parse_sql("SELECT DISTINCT r.1 FROM r WHERE (r.1, r.2) IN ('a', 'b');", i.schema),
                  SqlError);
  CHECK_THROWS_AS(parse_sql("SELECT DISTINCT r.1 FROM r UNION SELECT DISTINCT r.1, r.2 FROM r;",
                            i.schema),
                  SqlError);
  // reaching two scopes up is refused
  CHECK_THROWS_AS(
      parse_sql("SELECT DISTINCT r.1 FROM r AS outerr WHERE EXISTS ("
                "SELECT DISTINCT r.1 FROM r WHERE EXISTS ("
                "SELECT DISTINCT r.1 FROM r WHERE r.1 = outerr.1));",
                i.schema),
      SqlError);
}

TEST_CASE("bare positional references over unnamed tables") {
  InstanceN i = intro_instance();  // r has no declared column names here
  SqlQueryPtr q = parse_sql_query("SELECT DISTINCT 2 FROM r WHERE 1 = 'a';", i.schema);
  CHECK(exec_sql(q, i) == Relation{{A}});
  // out-of-range integers stay literals
  SqlQueryPtr lit = parse_sql_query("SELECT DISTINCT 9 FROM r;", i.schema);
  CHECK(exec_sql(lit, i) == Relation{{Value::integer(9)}});
}

TEST_CASE("CREATE TABLE arity must match the instance") {
  InstanceN i = intro_instance();
  CHECK_THROWS_AS(parse_sql("CREATE TABLE r ( c1 TEXT NOT NULL );", i.schema), SqlError);
}

TEST_CASE("CHECK constraints filter on definite violations only") {
  InstanceN i = intro_instance();
  SqlScript script = parse_sql(
      "CREATE TABLE r ( c1 TEXT NOT NULL, c2 TEXT NULL, "
      "CONSTRAINT c CHECK (c1 != 'z'), CONSTRAINT d CHECK (c2 = 'a') );",
      i.schema);
  const CreateTable& ct = *script.statements[0].create;
  REQUIRE(ct.checks.size() == 2);
  CHECK(check_sql_check(i, "r", ct.checks[0].condition));
  // c2 = 'a' is unknown on the null row, which does not violate the check,
  // but a definite 'b' would
  CHECK(check_sql_check(i, "r", ct.checks[1].condition));
  InstanceN bad = i;
  bad.insert("r", {A, B});
  CHECK(!check_sql_check(bad, "r", ct.checks[1].condition));
}

TEST_CASE("a subquery may select a column of its enclosing query") {
  InstanceN i;
  i.schema.add_relation("r", RelationDecl{2});
  i.schema.add_relation("q", RelationDecl{2});
  i.insert("r", {A, B});
  i.insert("r", {B, N});
  i.insert("q", {A, A});
  SqlQueryPtr query = parse_sql_query(
      "SELECT DISTINCT r.1 FROM r WHERE EXISTS "
      "(SELECT DISTINCT r.2 FROM q WHERE q.1 = r.1);",
      i.schema);
  Relation want{{A}};
  CHECK(exec_sql(query, i) == want);
  CHECK(eval_nra(compile_to_nra(query, i.schema), i) == want);
}

TEST_CASE("set operations work as derived tables") {
  InstanceN i;
  i.schema.add_relation("r", RelationDecl{2});
  i.insert("r", {A, A});
  i.insert("r", {B, N});
  SqlQueryPtr q = parse_sql_query(
      "SELECT DISTINCT v.1 FROM "
      "(SELECT DISTINCT r.1 FROM r UNION SELECT DISTINCT r.2 FROM r) AS v "
      "WHERE v.1 IS NOT NULL;",
      i.schema);
  Relation want{{A}, {B}};
  CHECK(exec_sql(q, i) == want);
  CHECK(eval_nra(compile_to_nra(q, i.schema), i) == want);
  // and as an EXISTS operand with correlation into the left branch
  SqlQueryPtr ex = parse_sql_query(
      "SELECT DISTINCT r.1 FROM r WHERE EXISTS "
      "(SELECT DISTINCT q2.1 FROM r AS q2 WHERE q2.2 = r.1 "
      " INTERSECT SELECT DISTINCT q3.1 FROM r AS q3);",
      i.schema);
  CHECK(exec_sql(ex, i) == eval_nra(compile_to_nra(ex, i.schema), i));
}
