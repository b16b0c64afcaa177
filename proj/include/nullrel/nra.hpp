#ifndef NULLREL_NRA_HPP
#define NULLREL_NRA_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nullrel/instance.hpp"

namespace nullrel {

struct NraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Selection condition over the columns of one expression. Atomic conditions
// are equality/inequality with a constant, between two columns, against the
// null marker, and the isNull/isNotNull tests; boolean combinations are
// accepted in the surface syntax and normalized away during expansion.
struct SelCond {
  enum class Kind {
    EqConst,    // i = v        keeps s iff s(i) = v and s(i) not null
    EqCols,     // i = j        keeps s iff s(i) = s(j), both not null
    NeqConst,   // i != v       e - sel[i=v](e)
    NeqCols,    // i != j       sel[i=i](sel[j=j](e)) - sel[i=j](e)
    EqNull,     // i = NULL     e - e
    NeqNull,    // i != NULL    e - e
    IsNull,     // isNull(i)    e - sel[i=i](e)
    IsNotNull,  // isNotNull(i) sel[i=i](e)
    And,
    Or,
    Not,
  };

  Kind kind;
  int i = 0, j = 0;
  Value v;
  std::shared_ptr<const SelCond> lhs, rhs;  // lhs only, for Not

  bool atomic() const { return kind != Kind::And && kind != Kind::Or && kind != Kind::Not; }
};

using SelCondPtr = std::shared_ptr<const SelCond>;

SelCondPtr cond_eq_const(int i, Value v);
SelCondPtr cond_eq_cols(int i, int j);
SelCondPtr cond_neq_const(int i, Value v);
SelCondPtr cond_neq_cols(int i, int j);
SelCondPtr cond_eq_null(int i);
SelCondPtr cond_neq_null(int i);
SelCondPtr cond_is_null(int i);
SelCondPtr cond_is_not_null(int i);
SelCondPtr cond_and(SelCondPtr a, SelCondPtr b);
SelCondPtr cond_or(SelCondPtr a, SelCondPtr b);
SelCondPtr cond_not(SelCondPtr c);

// Pushes negations inward and absorbs them into atomic conditions, leaving a
// negation-free combination of atoms.
SelCondPtr annf(const SelCondPtr& c);

struct NraExpr;
using NraPtr = std::shared_ptr<const NraExpr>;

struct NraExpr {
  enum class Kind {
    Relation,        // named relation
    SingletonConst,  // <v>, arity 1
    SingletonNull,   // <N>, arity 1
    Select,          // sel[cond](e)
    Project,         // proj[i1,...,ik](e), indices distinct, possibly empty
    Product,         // (l x r)
    Union,           // (l union r)
    Diff,            // (l minus r)
    Intersect,       // derived: l - (l - r)
    Join,            // derived: proj[...](sel[...](l x r))
    LeftOuterJoin,   // derived: join padded with nulls for unmatched rows
  };

  Kind kind;
  std::string rel;
  Value value;
  SelCondPtr cond;
  std::vector<int> cols;                     // projection indices
  std::vector<std::pair<int, int>> join_on;  // (left col, right col) pairs
  NraPtr lhs, rhs;
};

NraPtr nra_relation(std::string name);
NraPtr nra_singleton(Value v);  // the null marker yields the null singleton
NraPtr nra_select(SelCondPtr cond, NraPtr e);
NraPtr nra_project(std::vector<int> cols, NraPtr e);
NraPtr nra_product(NraPtr l, NraPtr r);
NraPtr nra_union(NraPtr l, NraPtr r);
NraPtr nra_diff(NraPtr l, NraPtr r);
NraPtr nra_intersect(NraPtr l, NraPtr r);
NraPtr nra_join(std::vector<std::pair<int, int>> on, NraPtr l, NraPtr r);
NraPtr nra_left_outer_join(std::vector<std::pair<int, int>> on, NraPtr l, NraPtr r);

// Arity of the expression, validating every formation side condition:
// relation existence, index bounds, arity agreement of set operations,
// distinctness of projection indices and of right-hand join columns.
int check_arity(const NraPtr& e, const Schema& schema);

// Rewrites every derived operator per its definitional equation; boolean
// selection conditions are first put in absorbed negation normal form. The
// result uses only relations, singletons, atomic-equality selections,
// projection, product, union and difference. The schema supplies relation
// arities for the join bookkeeping.
NraPtr expand_derived(const NraPtr& e, const Schema& schema);

// Row predicate of an ANNF selection condition (no Not nodes).
bool cond_holds(const SelCondPtr& c, const TotalTuple& t);

// Bottom-up set-semantics evaluation. Derived operators are evaluated
// directly; eval_nra(e) always equals eval_nra(expand_derived(e)).
Relation eval_nra(const NraPtr& e, const InstanceN& inst);

std::string to_string(const NraPtr& e);
std::string to_string(const SelCondPtr& c);

bool nra_equal(const NraPtr& a, const NraPtr& b);
bool cond_equal(const SelCondPtr& a, const SelCondPtr& b);

// Counts AST nodes, used by the translation size guard.
std::size_t nra_size(const NraPtr& e);

}  // namespace nullrel

#endif
