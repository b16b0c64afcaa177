#include <doctest.h>

#include "nullrel/instance.hpp"
#include "nullrel/instance_io.hpp"
#include "support.hpp"

using namespace nullrel;
using namespace testsupport;

namespace {

const char* kExampleTotal = R"({
  "relations": {"r": {"arity": 2, "tuples": [["a","a"], ["b",null]]}}
})";

Value A = Value::text("a");
Value B = Value::text("b");
Value N = Value::null();

}  // namespace

TEST_CASE("loading the two-row example instance") {
  InstanceN i = load_instance(kExampleTotal);
  CHECK(i.schema.arity("r") == 2);
  CHECK(i.at("r") == Relation{{A, A}, {B, N}});
}

TEST_CASE("loading collapses duplicates and accepts empty relations") {
  InstanceN i = load_instance(
      R"({"relations": {"r": {"arity": 2, "tuples": [["a","a"], ["a","a"]]}, "s": {"arity": 1, "tuples": []}}})");
  CHECK(i.at("r").size() == 1);
  CHECK(i.at("s").empty());
}

TEST_CASE("load errors") {
  CHECK_THROWS_AS(load_instance("not json"), LoadError);
  CHECK_THROWS_AS(load_instance(R"({"relations": {"r": {"arity": 2, "tuples": [["a"]]}}})"),
                  LoadError);
  // NOT NULL column rejects a null cell
  CHECK_THROWS_AS(load_instance(R"({"relations": {"r": {"arity": 1,
      "columns": [{"type": "text", "nullable": false}], "tuples": [[null]]}}})"),
                  LoadError);
  // declared int column rejects a text cell
  CHECK_THROWS_AS(load_instance(R"({"relations": {"r": {"arity": 1,
      "columns": [{"type": "int", "nullable": true}], "tuples": [["a"]]}}})"),
                  LoadError);
  // unknown relation against an expected schema
  Schema s;
  s.add_relation("q", RelationDecl{1});
  CHECK_THROWS_AS(load_instance(kExampleTotal, s), LoadError);
}

TEST_CASE("partial view drops exactly the null positions") {
  InstanceN i = load_instance(kExampleTotal);
  InstancePartial p = to_partial(i);
  PartialTuple full{2, {{1, A}, {2, A}}};
  PartialTuple half{2, {{1, B}}};
  CHECK(p.at("r") == std::set<PartialTuple>{full, half});
  CHECK(from_partial(p).at("r") == i.at("r"));
}

TEST_CASE("all-null tuple becomes the empty partial map") {
  InstanceN i;
  i.schema.add_relation("r", RelationDecl{2});
  i.insert("r", {N, N});
  InstancePartial p = to_partial(i);
  CHECK(p.at("r") == std::set<PartialTuple>{PartialTuple{2, {}}});
}

TEST_CASE("decomposition produces the slot layout of the example") {
  InstanceN i = load_instance(kExampleTotal);
  InstanceDecomposed d = decompose(i);
  CHECK(d.slot("r", {1, 2}) == Relation{{A, A}});
  CHECK(d.slot("r", {1}) == Relation{{B}});
  CHECK(d.slot("r", {2}).empty());
  CHECK(d.slot("r", {}).empty());
  CHECK(recompose(d).at("r") == i.at("r"));
}

TEST_CASE("all-null row decomposes into the zero-tuple slot") {
  InstanceN i;
  i.schema.add_relation("r", RelationDecl{2});
  i.insert("r", {N, N});
  InstanceDecomposed d = decompose(i);
  CHECK(d.slot("r", {}) == Relation{TotalTuple{}});
}

TEST_CASE("null-free instances keep everything in the full slot") {
  InstanceN i;
  i.schema.add_relation("r", RelationDecl{2});
  i.insert("r", {A, B});
  InstanceDecomposed d = decompose(i);
  CHECK(d.slot("r", {1, 2}) == Relation{{A, B}});
  CHECK(d.slot("r", {1}).empty());
  CHECK(d.slot("r", {2}).empty());
}

TEST_CASE("active domain") {
  InstanceN i = load_instance(kExampleTotal);
  CHECK(active_domain(i) == std::set<Value>{A, B});
  InstanceN empty = load_instance(R"({"relations": {}, "constants": ["c"]})");
  CHECK(active_domain(empty) == std::set<Value>{Value::text("c")});
  for (const Value& v : active_domain(i)) CHECK(!v.is_null());
}

TEST_CASE("representation round trips on random instances") {
  Rng rng(1234);
  for (int it = 0; it < 300; ++it) {
    InstanceN i = random_instance(rng);
    CHECK(from_partial(to_partial(i)).data == i.data);
    CHECK(recompose(decompose(i)).data == i.data);
    InstanceDecomposed d = decompose(i);
    InstanceDecomposed d2 = decompose(recompose(d));
    CHECK(d.slots == d2.slots);
    // serialized forms reload to the same data
    CHECK(load_instance(save_instance(i)).data == i.data);
    InstancePartial p = to_partial(i);
    CHECK(load_instance_partial(save_instance_partial(p)).data == p.data);
    CHECK(load_instance_decomposed(save_instance_decomposed(d)).slots == d.slots);
  }
}

TEST_CASE("typed values never compare equal across kinds") {
  CHECK(Value::integer(1) != Value::text("1"));
  CHECK(Value::null() == Value::null());
  CHECK(Value::text("a") < Value::null());  // null sorts last
  CHECK(Value::integer(5) < Value::text("a"));
}
