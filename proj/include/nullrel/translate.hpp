#ifndef NULLREL_TRANSLATE_HPP
#define NULLREL_TRANSLATE_HPP

#include <optional>
#include <string>

#include "nullrel/fole.hpp"
#include "nullrel/nra.hpp"

namespace nullrel {

struct TranslateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cell of the tuple an algebra expression is translated against: a non-null
// constant, the null marker, or a variable. Variables arise only inside the
// recursive projection clause; public callers pass ground tuples.
struct TransCell {
  enum class Kind { Const, Null, Var };
  Kind kind = Kind::Null;
  Value value;
  std::string var;

  static TransCell constant(Value v);
  static TransCell null() { return {}; }
  static TransCell variable(std::string name);
};

using TransTuple = std::vector<TransCell>;

TransTuple trans_tuple(const TotalTuple& t);

// Membership formula: for ground t, the result is closed and holds over an
// instance exactly when t is in the evaluation of e. Derived operators are
// expanded first. With simplify, truth constants are folded and ground
// equalities decided, matching the usual hand-simplified forms; without it
// the literal inductive definition is returned for auditing.
FormulaPtr omega(const NraPtr& e, const TransTuple& t, const Schema& schema,
                 bool simplify = true);

// Node budget for the exponential translations (projection disjunction, the
// subset formulas of constraints, the RANF rewriting). Defaults to 1e6.
std::size_t translation_node_budget();
void set_translation_node_budget(std::size_t budget);

// Naming of decomposed relations: r with positions {1,2} is "r~{1,2}".
std::string decomposed_rel_name(const std::string& rel, const std::vector<int>& positions);
std::optional<std::pair<std::string, std::vector<int>>> parse_decomposed_rel_name(
    const std::string& name);

// Schema holding every slot relation of every base relation.
Schema decomposed_schema(const Schema& base);

// View of a decomposed instance as a plain instance over slot relations,
// suitable for evaluating classical algebra expressions.
InstanceN decomposed_as_instance(const InstanceDecomposed& d);

// Safe-range calculus to algebra, over the decomposed signature: the output
// evaluates, on any decomposed instance, to the answer set of f over the free
// variables in free_vars order; closed formulas yield arity-zero expressions
// that are nonempty exactly when f holds.
NraPtr fol_to_ra(const FormulaPtr& f);

// Replaces each decomposed leaf r~{A} (r of arity n) by
// proj[A](sel[isNotNull(A)](sel[isNull([1..n] \ A)](r))).
NraPtr ra_decomp_to_nra(const NraPtr& e, const Schema& base_schema);

// Full pipeline for closed safe-range formulas with null terms: the result
// has arity zero and is nonempty exactly when the formula holds.
NraPtr fole_to_nra(const FormulaPtr& f, const Schema& base_schema);

}  // namespace nullrel

#endif
