#include "nullrel/instance.hpp"

#include <algorithm>

namespace nullrel {

void InstanceN::insert(const std::string& rel, TotalTuple t) {
  int n = schema.arity(rel);
  if (static_cast<int>(t.size()) != n)
    throw SchemaError("arity mismatch inserting into " + rel);
  data[rel].insert(std::move(t));
}

const Relation& InstanceDecomposed::slot(const std::string& rel,
                                         const std::vector<int>& positions) const {
  static const Relation empty;
  int n = schema.arity(rel);
  for (int p : positions)
    if (p < 1 || p > n) throw SchemaError("slot position out of range for " + rel);
  auto it = slots.find({rel, positions});
  return it == slots.end() ? empty : it->second;
}

void InstanceDecomposed::insert(const std::string& rel, const std::vector<int>& positions,
                                TotalTuple t) {
  int n = schema.arity(rel);
  if (!std::is_sorted(positions.begin(), positions.end()) ||
      std::adjacent_find(positions.begin(), positions.end()) != positions.end())
    throw SchemaError("slot positions must be strictly ascending for " + rel);
  for (int p : positions)
    if (p < 1 || p > n) throw SchemaError("slot position out of range for " + rel);
  if (t.size() != positions.size())
    throw SchemaError("tuple arity does not match slot for " + rel);
  for (const Value& v : t)
    if (v.is_null()) throw SchemaError("decomposed tuples cannot contain the null marker");
  slots[{rel, positions}].insert(std::move(t));
}

InstancePartial to_partial(const InstanceN& i) {
  InstancePartial out;
  out.schema = i.schema;
  for (const auto& [rel, decl] : out.schema.relations()) out.data.try_emplace(rel);
  for (const auto& [rel, tuples] : i.data) {
    auto& dst = out.data[rel];
    for (const TotalTuple& t : tuples) {
      PartialTuple p;
      p.arity = static_cast<int>(t.size());
      for (int k = 0; k < p.arity; ++k)
        if (!t[k].is_null()) p.cells.emplace(k + 1, t[k]);
      dst.insert(std::move(p));
    }
  }
  return out;
}

InstanceN from_partial(const InstancePartial& i) {
  InstanceN out;
  out.schema = i.schema;
  for (const auto& [rel, decl] : out.schema.relations()) out.data.try_emplace(rel);
  for (const auto& [rel, tuples] : i.data) {
    auto& dst = out.data[rel];
    for (const PartialTuple& p : tuples) {
      TotalTuple t(p.arity, Value::null());
      for (const auto& [pos, v] : p.cells) t[pos - 1] = v;
      dst.insert(std::move(t));
    }
  }
  return out;
}

InstanceDecomposed decompose(const InstanceN& i) {
  InstanceDecomposed out;
  out.schema = i.schema;
  for (const auto& [rel, tuples] : i.data) {
    for (const TotalTuple& t : tuples) {
      std::vector<int> positions;
      TotalTuple kept;
      for (int k = 0; k < static_cast<int>(t.size()); ++k) {
        if (!t[k].is_null()) {
          positions.push_back(k + 1);
          kept.push_back(t[k]);
        }
      }
      out.slots[{rel, std::move(positions)}].insert(std::move(kept));
    }
  }
  return out;
}

InstanceN recompose(const InstanceDecomposed& i) {
  InstanceN out;
  out.schema = i.schema;
  for (const auto& [rel, decl] : out.schema.relations()) out.data.try_emplace(rel);
  for (const auto& [key, tuples] : i.slots) {
    const auto& [rel, positions] = key;
    int n = out.schema.arity(rel);
    for (const TotalTuple& t : tuples) {
      TotalTuple full(n, Value::null());
      for (std::size_t k = 0; k < positions.size(); ++k) full[positions[k] - 1] = t[k];
      out.data[rel].insert(std::move(full));
    }
  }
  return out;
}

std::set<Value> active_domain(const InstanceN& i) {
  std::set<Value> out = i.schema.declared_constants();
  for (const auto& [rel, tuples] : i.data)
    for (const TotalTuple& t : tuples)
      for (const Value& v : t)
        if (!v.is_null()) out.insert(v);
  return out;
}

std::set<Value> active_domain(const InstancePartial& i) {
  std::set<Value> out = i.schema.declared_constants();
  for (const auto& [rel, tuples] : i.data)
    for (const PartialTuple& p : tuples)
      for (const auto& [pos, v] : p.cells) out.insert(v);
  return out;
}

}  // namespace nullrel
