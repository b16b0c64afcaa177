#ifndef NULLREL_CONSTRAINTS_HPP
#define NULLREL_CONSTRAINTS_HPP

#include <vector>

#include "nullrel/fole.hpp"
#include "nullrel/instance.hpp"
#include "nullrel/nra.hpp"

namespace nullrel {

struct ConstraintError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConstraintDecl {
  enum class Kind { Unique, PrimaryKey, NotNull, ForeignKey };
  Kind kind;
  std::string relation;
  std::vector<int> columns;  // key columns, referencing columns, or one column
  std::string ref_relation;  // referenced table of a foreign key
  std::vector<int> ref_columns;
};

// Distinct in-range columns, matching column counts for foreign keys.
void validate_constraint(const ConstraintDecl& d, const Schema& schema);

// Declaration registry enforcing at most one primary key per table.
class ConstraintSet {
public:
  void add(ConstraintDecl d, const Schema& schema);
  const std::vector<ConstraintDecl>& all() const { return decls_; }

private:
  std::vector<ConstraintDecl> decls_;
};

// Direct checkers, the source of truth.
bool check_unique(const InstanceN& i, const std::string& rel, const std::vector<int>& cols);
bool check_primary_key(const InstanceN& i, const std::string& rel, const std::vector<int>& cols);
bool check_not_null(const InstanceN& i, const std::string& rel, int col);
bool check_foreign_key_simple(const InstanceN& i, const std::string& r,
                              const std::vector<int>& fcols, const std::string& s,
                              const std::vector<int>& ucols);
bool check_constraint(const InstanceN& i, const ConstraintDecl& d);

// Denial expressions (all must evaluate empty) for the patterns with known
// algebra forms: single-column UNIQUE over a binary relation, NOT NULL, and
// single-column foreign keys; PRIMARY KEY combines the first two.
std::vector<NraPtr> denial_nra(const ConstraintDecl& d, const Schema& schema);

// An R-atom with the given terms at the listed positions and the null term
// everywhere else.
FormulaPtr nullify_atom(const std::string& rel, int arity,
                        const std::vector<std::pair<int, FoleTerm>>& at);

// The subset-quantified calculus encodings; closed formulas evaluated with
// the standard satisfaction machinery. Exponential in the relation arity,
// bounded by the translation node budget.
FormulaPtr constraint_to_fole(const ConstraintDecl& d, const Schema& schema);

// Evaluates the calculus encoding over the instance.
bool check_constraint_fole(const InstanceN& i, const ConstraintDecl& d);

// Text form used by the command line:
//   unique R c1[,c2...] | pk R c1[,...] | notnull R c | fk R f1[,...] -> S u1[,...]
ConstraintDecl parse_constraint(const std::string& spec);

}  // namespace nullrel

#endif
