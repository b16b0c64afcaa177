#ifndef NULLREL_FOLE_HPP
#define NULLREL_FOLE_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nullrel/instance.hpp"

namespace nullrel {

struct FoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotSafeRangeError : FoleError {
  using FoleError::FoleError;
};

// Term: a non-null constant, a variable, or the null marker. The null marker
// is a term but not a constant; equality atoms never contain it.
struct FoleTerm {
  enum class Kind { Const, Var, Null };
  Kind kind = Kind::Null;
  Value value;      // Const
  std::string var;  // Var

  static FoleTerm constant(Value v);
  static FoleTerm variable(std::string name);
  static FoleTerm null();

  friend bool operator==(const FoleTerm& a, const FoleTerm& b) {
    return a.kind == b.kind && a.value == b.value && a.var == b.var;
  }
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Formula node shared by the calculus with nulls and by classical FOL over
// the decomposed signature: decomposed atoms carry the position subset and
// contain no null terms.
struct Formula {
  enum class Kind { Atom, Eq, Not, And, Or, Exists, Forall, True, False };

  Kind kind;
  std::string pred;                           // Atom
  std::optional<std::vector<int>> positions;  // Atom over the decomposed signature
  std::vector<FoleTerm> terms;                // Atom (both flavors)
  FoleTerm t1, t2;                            // Eq
  std::string var;                            // Exists / Forall
  FormulaPtr lhs, rhs;                        // children
};

FormulaPtr f_atom(std::string pred, std::vector<FoleTerm> terms);
// Decomposed atom R~{positions}(terms); positions strictly ascending,
// terms.size() == positions.size(), no null terms.
FormulaPtr f_atom_decomposed(std::string pred, std::vector<int> positions,
                             std::vector<FoleTerm> terms);
FormulaPtr f_eq(FoleTerm a, FoleTerm b);  // rejects the null marker
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_exists(std::string var, FormulaPtr f);
FormulaPtr f_forall(std::string var, FormulaPtr f);
FormulaPtr f_true();
FormulaPtr f_false();

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);
// Structural equality modulo renaming of bound variables.
bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b);
std::size_t formula_size(const FormulaPtr& f);
std::string to_string(const FormulaPtr& f);

// Variables bound to non-null values.
using Assignment = std::map<std::string, Value>;

// Free variables in order of first appearance in a left-to-right traversal;
// this is the column order of answer tuples.
std::vector<std::string> free_vars(const FormulaPtr& f);
std::set<Value> formula_constants(const FormulaPtr& f);

// Truth of f over an instance of partial tuples, with quantifiers ranging
// over the supplied finite domain. The assignment must bind every free
// variable of f. Atoms of the decomposed signature are rejected here.
bool satisfies(const InstancePartial& inst, const Assignment& a, const FormulaPtr& f,
               const std::set<Value>& domain);

// Answer set of a safe-range query: all tuples of domain values, over the
// free variables in free_vars order, whose total assignment satisfies the
// query. The evaluation domain is the active domain plus the constants of the
// query (plus one arbitrary constant when that union is empty, since
// interpretation domains are nonempty). Throws NotSafeRangeError otherwise.
Relation answer_set(const FormulaPtr& q, const InstancePartial& inst);

// The evaluation domain answer_set uses.
std::set<Value> evaluation_domain(const FormulaPtr& q, const InstancePartial& inst);

// Safe-range normal form: bound variables renamed apart (fresh names v1,
// v2, ... on collision), universal quantifiers rewritten via negation,
// double negations removed, negation pushed through disjunction, and
// existential quantifiers pushed inward.
FormulaPtr to_srnf(const FormulaPtr& f);

// Range restriction of an SRNF formula: the restricted subset of its free
// variables, or nullopt when the formula is not safe (NOT-SAFE).
std::optional<std::set<std::string>> range_restriction(const FormulaPtr& srnf);

// rr(srnf(f)) == free_vars(f)
bool is_safe_range(const FormulaPtr& f);

// Replaces every atom holding k >= 1 null terms with the disjunction of its
// 2^k variants where subsets of the null positions become fresh
// existentially quantified variables.
FormulaPtr no_info_rewrite(const FormulaPtr& f);

}  // namespace nullrel

#endif
