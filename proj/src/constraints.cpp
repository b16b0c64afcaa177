#include "nullrel/constraints.hpp"

#include <algorithm>
#include <set>

#include "nullrel/translate.hpp"
#include "parse_util.hpp"

namespace nullrel {

void validate_constraint(const ConstraintDecl& d, const Schema& schema) {
  auto check_cols = [&](const std::string& rel, const std::vector<int>& cols) {
    int n = schema.arity(rel);
    std::set<int> seen;
    if (cols.empty()) throw ConstraintError("constraint without columns on " + rel);
    for (int c : cols) {
      if (c < 1 || c > n)
        throw ConstraintError("column " + std::to_string(c) + " outside " + rel + "/" +
                              std::to_string(n));
      if (!seen.insert(c).second)
        throw ConstraintError("column " + std::to_string(c) + " repeated in a key of " + rel);
    }
  };
  check_cols(d.relation, d.columns);
  switch (d.kind) {
    case ConstraintDecl::Kind::NotNull:
      if (d.columns.size() != 1) throw ConstraintError("NOT NULL names exactly one column");
      break;
    case ConstraintDecl::Kind::ForeignKey:
      check_cols(d.ref_relation, d.ref_columns);
      if (d.columns.size() != d.ref_columns.size())
        throw ConstraintError("foreign key column lists differ in length");
      break;
    default: break;
  }
}

void ConstraintSet::add(ConstraintDecl d, const Schema& schema) {
  validate_constraint(d, schema);
  if (d.kind == ConstraintDecl::Kind::PrimaryKey)
    for (const ConstraintDecl& other : decls_)
      if (other.kind == ConstraintDecl::Kind::PrimaryKey && other.relation == d.relation)
        throw ConstraintError("table " + d.relation + " already has a primary key");
  decls_.push_back(std::move(d));
}

bool check_unique(const InstanceN& i, const std::string& rel, const std::vector<int>& cols) {
  const Relation& rows = i.at(rel);
  for (auto it1 = rows.begin(); it1 != rows.end(); ++it1) {
    for (auto it2 = std::next(it1); it2 != rows.end(); ++it2) {
      bool clash = true;
      for (int c : cols) {
        const Value& a = (*it1)[c - 1];
        const Value& b = (*it2)[c - 1];
        if (a.is_null() || b.is_null() || !(a == b)) {
          clash = false;
          break;
        }
      }
      if (clash) return false;
    }
  }
  return true;
}

bool check_primary_key(const InstanceN& i, const std::string& rel, const std::vector<int>& cols) {
  for (const TotalTuple& row : i.at(rel))
    for (int c : cols)
      if (row[c - 1].is_null()) return false;
  return check_unique(i, rel, cols);
}

bool check_not_null(const InstanceN& i, const std::string& rel, int col) {
  return eval_nra(nra_select(cond_is_null(col), nra_relation(rel)), i).empty();
}

bool check_foreign_key_simple(const InstanceN& i, const std::string& r,
                              const std::vector<int>& fcols, const std::string& s,
                              const std::vector<int>& ucols) {
  for (const TotalTuple& row : i.at(r)) {
    bool applicable = true;
    for (int c : fcols)
      if (row[c - 1].is_null()) applicable = false;
    if (!applicable) continue;
    bool matched = false;
    for (const TotalTuple& ref : i.at(s)) {
      bool eq = true;
      for (std::size_t k = 0; k < fcols.size(); ++k) {
        const Value& a = row[fcols[k] - 1];
        const Value& b = ref[ucols[k] - 1];
        if (b.is_null() || !(a == b)) {
          eq = false;
          break;
        }
      }
      if (eq) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

bool check_constraint(const InstanceN& i, const ConstraintDecl& d) {
  validate_constraint(d, i.schema);
  switch (d.kind) {
    case ConstraintDecl::Kind::Unique: return check_unique(i, d.relation, d.columns);
    case ConstraintDecl::Kind::PrimaryKey: return check_primary_key(i, d.relation, d.columns);
    case ConstraintDecl::Kind::NotNull: return check_not_null(i, d.relation, d.columns[0]);
    case ConstraintDecl::Kind::ForeignKey:
      return check_foreign_key_simple(i, d.relation, d.columns, d.ref_relation, d.ref_columns);
  }
  throw ConstraintError("unreachable");
}

std::vector<NraPtr> denial_nra(const ConstraintDecl& d, const Schema& schema) {
  validate_constraint(d, schema);
  switch (d.kind) {
    case ConstraintDecl::Kind::NotNull:
      return {nra_select(cond_is_null(d.columns[0]), nra_relation(d.relation))};
    case ConstraintDecl::Kind::Unique: {
      if (schema.arity(d.relation) != 2 || d.columns.size() != 1)
        throw ConstraintError("no algebra denial form for this uniqueness pattern");
      int u = d.columns[0];
      int other = u == 1 ? 2 : 1;
      NraPtr self = nra_product(nra_relation(d.relation), nra_relation(d.relation));
      return {nra_select(cond_eq_cols(u, u + 2),
                         nra_select(cond_neq_cols(other, other + 2), std::move(self)))};
    }
    case ConstraintDecl::Kind::PrimaryKey: {
      ConstraintDecl unique = d;
      unique.kind = ConstraintDecl::Kind::Unique;
      std::vector<NraPtr> out = denial_nra(unique, schema);
      for (int c : d.columns)
        out.push_back(nra_select(cond_is_null(c), nra_relation(d.relation)));
      return out;
    }
    case ConstraintDecl::Kind::ForeignKey: {
      if (d.columns.size() != 1)
        throw ConstraintError("no algebra denial form for composite foreign keys");
      int f = d.columns[0];
      int u = d.ref_columns[0];
      return {nra_diff(
          nra_project({f}, nra_select(cond_is_not_null(f), nra_relation(d.relation))),
          nra_project({u}, nra_select(cond_is_not_null(u), nra_relation(d.ref_relation))))};
    }
  }
  throw ConstraintError("unreachable");
}

FormulaPtr nullify_atom(const std::string& rel, int arity,
                        const std::vector<std::pair<int, FoleTerm>>& at) {
  std::vector<FoleTerm> terms(arity, FoleTerm::null());
  for (const auto& [pos, term] : at) {
    if (pos < 1 || pos > arity) throw ConstraintError("nullify position outside the relation");
    terms[pos - 1] = term;
  }
  return f_atom(rel, std::move(terms));
}

namespace {

std::vector<std::vector<int>> subsets_of_rest(int arity, const std::vector<int>& excluded,
                                              std::size_t budget) {
  std::vector<int> rest;
  for (int c = 1; c <= arity; ++c)
    if (std::find(excluded.begin(), excluded.end(), c) == excluded.end()) rest.push_back(c);
  if (rest.size() > 20 || (std::uint64_t{1} << rest.size()) > budget)
    throw ConstraintError("constraint formula exceeds the node budget");
  std::vector<std::vector<int>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rest.size()); ++mask) {
    std::vector<int> subset;
    for (std::size_t b = 0; b < rest.size(); ++b)
      if (mask & (std::uint64_t{1} << b)) subset.push_back(rest[b]);
    out.push_back(std::move(subset));
  }
  return out;
}

std::vector<FoleTerm> vars(const std::string& prefix, int n) {
  std::vector<FoleTerm> out;
  for (int k = 1; k <= n; ++k) out.push_back(FoleTerm::variable(prefix + std::to_string(k)));
  return out;
}

FormulaPtr forall_chain(const std::vector<FoleTerm>& vs, FormulaPtr body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = f_forall(it->var, std::move(body));
  return body;
}
FormulaPtr exists_chain(const std::vector<FoleTerm>& vs, FormulaPtr body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = f_exists(it->var, std::move(body));
  return body;
}

FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return f_or(f_not(std::move(a)), std::move(b)); }

std::vector<std::pair<int, FoleTerm>> zip(const std::vector<int>& pos,
                                          const std::vector<FoleTerm>& terms) {
  std::vector<std::pair<int, FoleTerm>> out;
  for (std::size_t k = 0; k < pos.size(); ++k) out.emplace_back(pos[k], terms[k]);
  return out;
}

FormulaPtr and_all(const std::vector<FormulaPtr>& parts) {
  if (parts.empty()) return f_true();
  FormulaPtr out = parts[0];
  for (std::size_t k = 1; k < parts.size(); ++k) out = f_and(out, parts[k]);
  return out;
}
FormulaPtr or_all(const std::vector<FormulaPtr>& parts) {
  if (parts.empty()) return f_false();
  FormulaPtr out = parts[0];
  for (std::size_t k = 1; k < parts.size(); ++k) out = f_or(out, parts[k]);
  return out;
}

// no row of rel is null on col: not (OR over subsets avoiding col of
// exists y. nullify(subset -> y))
FormulaPtr not_null_formula(const std::string& rel, int arity, int col, std::size_t budget) {
  std::vector<FormulaPtr> cases;
  for (const std::vector<int>& subset : subsets_of_rest(arity, {col}, budget)) {
    std::vector<FoleTerm> ys = vars("y", static_cast<int>(subset.size()));
    cases.push_back(exists_chain(ys, nullify_atom(rel, arity, zip(subset, ys))));
  }
  return f_not(or_all(cases));
}

FormulaPtr unique_formula(const std::string& rel, int arity, const std::vector<int>& cols,
                          std::size_t budget) {
  std::vector<FoleTerm> xs = vars("x", static_cast<int>(cols.size()));
  auto key = zip(cols, xs);

  // within each null pattern, the key determines the remaining values
  std::vector<FormulaPtr> per_pattern;
  for (const std::vector<int>& subset : subsets_of_rest(arity, cols, budget)) {
    int k = static_cast<int>(subset.size());
    std::vector<FoleTerm> ys = vars("y", k);
    std::vector<FoleTerm> zs = vars("z", k);
    auto left = key;
    auto right = key;
    for (int j = 0; j < k; ++j) {
      left.emplace_back(subset[j], ys[j]);
      right.emplace_back(subset[j], zs[j]);
    }
    FormulaPtr both =
        f_and(nullify_atom(rel, arity, left), nullify_atom(rel, arity, right));
    std::vector<FormulaPtr> eqs;
    for (int j = 0; j < k; ++j) eqs.push_back(f_eq(ys[j], zs[j]));
    FormulaPtr body = implies(std::move(both), and_all(eqs));
    std::vector<FoleTerm> quantified = ys;
    quantified.insert(quantified.end(), zs.begin(), zs.end());
    per_pattern.push_back(forall_chain(quantified, std::move(body)));
  }
  FormulaPtr part1 = forall_chain(xs, and_all(per_pattern));

  // no key value may appear under every null pattern at once
  std::vector<FormulaPtr> all_patterns;
  for (const std::vector<int>& subset : subsets_of_rest(arity, cols, budget)) {
    std::vector<FoleTerm> ys = vars("y", static_cast<int>(subset.size()));
    auto at = key;
    for (std::size_t j = 0; j < subset.size(); ++j) at.emplace_back(subset[j], ys[j]);
    all_patterns.push_back(exists_chain(ys, nullify_atom(rel, arity, at)));
  }
  FormulaPtr part2 = forall_chain(xs, implies(and_all(all_patterns), f_false()));
  return f_and(part1, part2);
}

FormulaPtr foreign_key_formula(const std::string& r, int m_r, const std::vector<int>& fcols,
                               const std::string& s, int m_s, const std::vector<int>& ucols,
                               std::size_t budget) {
  std::vector<FoleTerm> xs = vars("x", static_cast<int>(fcols.size()));
  std::vector<FormulaPtr> ante, cons;
  for (const std::vector<int>& subset : subsets_of_rest(m_r, fcols, budget)) {
    std::vector<FoleTerm> ys = vars("y", static_cast<int>(subset.size()));
    auto at = zip(fcols, xs);
    for (std::size_t j = 0; j < subset.size(); ++j) at.emplace_back(subset[j], ys[j]);
    ante.push_back(exists_chain(ys, nullify_atom(r, m_r, at)));
  }
  for (const std::vector<int>& subset : subsets_of_rest(m_s, ucols, budget)) {
    std::vector<FoleTerm> ys = vars("y", static_cast<int>(subset.size()));
    auto at = zip(ucols, xs);
    for (std::size_t j = 0; j < subset.size(); ++j) at.emplace_back(subset[j], ys[j]);
    cons.push_back(exists_chain(ys, nullify_atom(s, m_s, at)));
  }
  return forall_chain(xs, implies(or_all(ante), or_all(cons)));
}

}  // namespace

FormulaPtr constraint_to_fole(const ConstraintDecl& d, const Schema& schema) {
  validate_constraint(d, schema);
  std::size_t budget = translation_node_budget();
  int arity = schema.arity(d.relation);
  switch (d.kind) {
    case ConstraintDecl::Kind::NotNull:
      return not_null_formula(d.relation, arity, d.columns[0], budget);
    case ConstraintDecl::Kind::Unique:
      return unique_formula(d.relation, arity, d.columns, budget);
    case ConstraintDecl::Kind::PrimaryKey: {
      FormulaPtr f = unique_formula(d.relation, arity, d.columns, budget);
      for (int c : d.columns) f = f_and(f, not_null_formula(d.relation, arity, c, budget));
      return f;
    }
    case ConstraintDecl::Kind::ForeignKey:
      return foreign_key_formula(d.relation, arity, d.columns, d.ref_relation,
                                 schema.arity(d.ref_relation), d.ref_columns, budget);
  }
  throw ConstraintError("unreachable");
}

bool check_constraint_fole(const InstanceN& i, const ConstraintDecl& d) {
  FormulaPtr f = constraint_to_fole(d, i.schema);
  InstancePartial p = to_partial(i);
  return satisfies(p, {}, f, evaluation_domain(f, p));
}

ConstraintDecl parse_constraint(const std::string& spec) {
  detail::Cursor cur(spec);
  ConstraintDecl d;
  auto cols = [&]() {
    std::vector<int> out;
    do out.push_back(static_cast<int>(cur.integer()));
    while (cur.try_char(','));
    return out;
  };
  try {
    if (cur.try_keyword("unique")) {
      d.kind = ConstraintDecl::Kind::Unique;
      d.relation = cur.ident();
      d.columns = cols();
    } else if (cur.try_keyword("pk")) {
      d.kind = ConstraintDecl::Kind::PrimaryKey;
      d.relation = cur.ident();
      d.columns = cols();
    } else if (cur.try_keyword("notnull")) {
      d.kind = ConstraintDecl::Kind::NotNull;
      d.relation = cur.ident();
      d.columns = cols();
    } else if (cur.try_keyword("fk")) {
      d.kind = ConstraintDecl::Kind::ForeignKey;
      d.relation = cur.ident();
      d.columns = cols();
      cur.expect_char('-');
      cur.expect_char('>');
      d.ref_relation = cur.ident();
      d.ref_columns = cols();
    } else {
      cur.fail("expected unique, pk, notnull or fk");
    }
    cur.expect_eof();
  } catch (const detail::ParsePosError& e) {
    throw ConstraintError(e.what());
  }
  return d;
}

}  // namespace nullrel
