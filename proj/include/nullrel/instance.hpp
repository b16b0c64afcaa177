#ifndef NULLREL_INSTANCE_HPP
#define NULLREL_INSTANCE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nullrel/value.hpp"

namespace nullrel {

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Declared column type, present only when the instance file or a CREATE TABLE
// statement provides one. NOT NULL columns reject null cells at load time.
struct ColumnSpec {
  enum class Type { Text, Int };
  Type type = Type::Text;
  bool nullable = true;
};

struct RelationDecl {
  RelationDecl() = default;
  explicit RelationDecl(int a) : arity(a) {}

  int arity = 0;
  std::optional<std::vector<ColumnSpec>> columns;
  // Column names come only from CREATE TABLE; positions are 1-based.
  std::optional<std::vector<std::string>> column_names;
};

// Relation names with fixed arities plus the declared constant symbols.
// Zero-ary relations are permitted.
class Schema {
public:
  void add_relation(const std::string& name, RelationDecl decl) {
    if (decl.arity < 0) throw SchemaError("negative arity for relation " + name);
    if (decl.columns && static_cast<int>(decl.columns->size()) != decl.arity)
      throw SchemaError("column list does not match arity for relation " + name);
    if (!relations_.emplace(name, std::move(decl)).second)
      throw SchemaError("duplicate relation " + name);
  }
  bool has_relation(const std::string& name) const { return relations_.count(name) != 0; }
  const RelationDecl& relation(const std::string& name) const {
    auto it = relations_.find(name);
    if (it == relations_.end()) throw SchemaError("unknown relation " + name);
    return it->second;
  }
  RelationDecl& relation_mut(const std::string& name) {
    auto it = relations_.find(name);
    if (it == relations_.end()) throw SchemaError("unknown relation " + name);
    return it->second;
  }
  int arity(const std::string& name) const { return relation(name).arity; }
  const std::map<std::string, RelationDecl>& relations() const { return relations_; }

  void declare_constant(Value v) {
    if (v.is_null()) throw SchemaError("the null marker cannot be a declared constant");
    constants_.insert(std::move(v));
  }
  const std::set<Value>& declared_constants() const { return constants_; }

private:
  std::map<std::string, RelationDecl> relations_;
  std::set<Value> constants_;
};

// Total tuple: every position carries a value, possibly the null marker.
using TotalTuple = std::vector<Value>;

// Partial tuple of a declared arity: defined positions map to non-null values.
struct PartialTuple {
  int arity = 0;
  std::map<int, Value> cells;  // 1-based positions, values never null

  friend bool operator==(const PartialTuple& a, const PartialTuple& b) {
    return a.arity == b.arity && a.cells == b.cells;
  }
  friend bool operator<(const PartialTuple& a, const PartialTuple& b) {
    if (a.arity != b.arity) return a.arity < b.arity;
    return a.cells < b.cells;
  }
};

using Relation = std::set<TotalTuple>;

// Instance with explicit nulls inside total tuples, as SQL stores them.
struct InstanceN {
  Schema schema;
  std::map<std::string, Relation> data;

  const Relation& at(const std::string& rel) const {
    static const Relation empty;
    auto it = data.find(rel);
    return it == data.end() ? empty : it->second;
  }
  void insert(const std::string& rel, TotalTuple t);
};

// Instance whose tuples are partial functions; no null marker anywhere.
struct InstancePartial {
  Schema schema;
  std::map<std::string, std::set<PartialTuple>> data;

  const std::set<PartialTuple>& at(const std::string& rel) const {
    static const std::set<PartialTuple> empty;
    auto it = data.find(rel);
    return it == data.end() ? empty : it->second;
  }
};

// Horizontally decomposed instance: one slot per (relation, position subset),
// holding null-free total tuples of arity |subset|. Empty slots are implicit;
// every subset of [1..arity] is a valid slot.
struct InstanceDecomposed {
  Schema schema;  // the base (undecomposed) schema
  std::map<std::pair<std::string, std::vector<int>>, Relation> slots;

  const Relation& slot(const std::string& rel, const std::vector<int>& positions) const;
  void insert(const std::string& rel, const std::vector<int>& positions, TotalTuple t);
};

InstancePartial to_partial(const InstanceN& i);
InstanceN from_partial(const InstancePartial& i);
InstanceDecomposed decompose(const InstanceN& i);
InstanceN recompose(const InstanceDecomposed& i);

// All non-null values occurring in any tuple, plus the declared constants.
std::set<Value> active_domain(const InstanceN& i);
std::set<Value> active_domain(const InstancePartial& i);

}  // namespace nullrel

#endif
