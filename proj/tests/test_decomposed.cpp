#include <doctest.h>

#include "nullrel/decomposed.hpp"
#include "nullrel/fole_parser.hpp"
#include "nullrel/instance_io.hpp"
#include "support.hpp"

using namespace nullrel;
using namespace testsupport;

namespace {
Value A = Value::text("a");
Value B = Value::text("b");
}  // namespace

TEST_CASE("atom translation keeps exactly the non-null positions") {
  FormulaPtr f = parse_fole("exists x. R('a', x) and R(x, NULL) and R(NULL, NULL)");
  FormulaPtr expect = parse_fole("exists x. R~{1,2}('a', x) and R~{1}(x) and R~{}");
  CHECK(formula_equal(omega_f(f), expect));
}

TEST_CASE("null-free atoms map to the full-position predicate") {
  FormulaPtr f = parse_fole("R(x, 'b')");
  CHECK(formula_equal(omega_f(f), parse_fole("R~{1,2}(x, 'b')")));
}

TEST_CASE("inverse translation re-expands with nulls") {
  Schema s;
  s.add_relation("R", RelationDecl{2});
  CHECK(formula_equal(omega_f_inv(parse_fole("R~{1}(x)"), s), parse_fole("R(x, NULL)")));
  CHECK(formula_equal(omega_f_inv(parse_fole("R~{}"), s), parse_fole("R(NULL, NULL)")));
}

TEST_CASE("the bijection round trips on random formulas") {
  Rng rng(42);
  Schema s;
  s.add_relation("r", RelationDecl{2});
  s.add_relation("p", RelationDecl{1});
  std::vector<Value> dom = small_domain(3);
  for (int it = 0; it < 200; ++it) {
    FormulaPtr f = random_formula(rng, s, dom, {}, 3);
    FormulaPtr g = omega_f(f);
    CHECK(formula_equal(omega_f_inv(g, s), f));
    CHECK(formula_equal(omega_f(omega_f_inv(g, s)), g));
    // structure preserved: same free variables in the same order
    CHECK(free_vars(g) == free_vars(f));
  }
}

TEST_CASE("decomposed evaluation over the example instance") {
  InstanceN i = load_instance(
      R"({"relations": {"R": {"arity": 2, "tuples": [["a","a"], ["b",null]]}}})");
  InstanceDecomposed d = decompose(i);
  std::set<Value> dom = {A, B};
  CHECK(eval_fol_decomposed(parse_fole("R~{1}('b')"), d, {}, dom));
  CHECK(!eval_fol_decomposed(parse_fole("R~{}"), d, {}, dom));
  CHECK(eval_fol_decomposed(parse_fole("exists x. R~{1,2}(x, x)"), d, {}, dom));
  CHECK(!eval_fol_decomposed(parse_fole("R~{2}('a')"), d, {}, dom));
}

TEST_CASE("a zero-ary slot atom holds exactly when the slot has the zero-tuple") {
  InstanceN i;
  i.schema.add_relation("R", RelationDecl{2});
  i.insert("R", {Value::null(), Value::null()});
  InstanceDecomposed d = decompose(i);
  CHECK(eval_fol_decomposed(parse_fole("R~{}"), d, {}, {A}));
}

TEST_CASE("satisfaction transfers through the bijection") {
  Rng rng(4242);
  FormulaOptions opt;
  for (int it = 0; it < 400; ++it) {
    InstanceN inst = random_instance(rng);
    InstancePartial part = to_partial(inst);
    InstanceDecomposed dec = decompose(inst);
    std::vector<Value> domv = small_domain(4);
    FormulaPtr f = random_formula(rng, inst.schema, domv, opt, 3);
    std::set<Value> dom(domv.begin(), domv.end());
    Assignment a = random_assignment(rng, f, domv);
    CHECK(satisfies(part, a, f, dom) == eval_fol_decomposed(omega_f(f), dec, a, dom));
  }
}
