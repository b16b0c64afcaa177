#include "nullrel/instance_io.hpp"

#include <json.hpp>

namespace nullrel {

using json = nlohmann::json;

namespace {

Value value_from_json(const json& j) {
  if (j.is_null()) return Value::null();
  if (j.is_string()) return Value::text(j.get<std::string>());
  if (j.is_number_integer()) return Value::integer(j.get<std::int64_t>());
  throw LoadError("cell values must be strings, integers or null, got: " + j.dump());
}

json value_to_json(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Null: return nullptr;
    case Value::Kind::Text: return v.as_text();
    case Value::Kind::Int: return v.as_int();
  }
  return nullptr;
}

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw LoadError("invalid JSON");
  return j;
}

void check_cell_type(const std::string& rel, int pos, const ColumnSpec& col, const Value& v) {
  if (v.is_null()) {
    if (!col.nullable)
      throw LoadError("null in NOT NULL column " + std::to_string(pos) + " of " + rel);
    return;
  }
  bool ok = (col.type == ColumnSpec::Type::Text && v.kind() == Value::Kind::Text) ||
            (col.type == ColumnSpec::Type::Int && v.kind() == Value::Kind::Int);
  if (!ok)
    throw LoadError("type mismatch in column " + std::to_string(pos) + " of " + rel);
}

InstanceN load_total(const json& j, const Schema* expected) {
  if (!j.is_object()) throw LoadError("top level must be an object");
  InstanceN out;
  const json empty_obj = json::object();
  const json& rels = j.contains("relations") ? j.at("relations") : empty_obj;
  if (!rels.is_object()) throw LoadError("\"relations\" must be an object");

  for (auto it = rels.begin(); it != rels.end(); ++it) {
    const std::string& name = it.key();
    const json& rj = it.value();
    if (!rj.is_object() || !rj.contains("arity") || !rj.at("arity").is_number_integer())
      throw LoadError("relation " + name + " needs an integer \"arity\"");
    RelationDecl decl;
    decl.arity = rj.at("arity").get<int>();
    if (decl.arity < 0) throw LoadError("relation " + name + " has negative arity");
    if (rj.contains("columns")) {
      std::vector<ColumnSpec> cols;
      for (const json& cj : rj.at("columns")) {
        ColumnSpec c;
        std::string ty = cj.at("type").get<std::string>();
        if (ty == "text")
          c.type = ColumnSpec::Type::Text;
        else if (ty == "int")
          c.type = ColumnSpec::Type::Int;
        else
          throw LoadError("unknown column type \"" + ty + "\" in " + name);
        c.nullable = cj.value("nullable", true);
        cols.push_back(c);
      }
      if (static_cast<int>(cols.size()) != decl.arity)
        throw LoadError("column list of " + name + " does not match its arity");
      decl.columns = std::move(cols);
    }
    if (expected) {
      if (!expected->has_relation(name)) throw LoadError("unknown relation " + name);
      if (expected->arity(name) != decl.arity)
        throw LoadError("arity mismatch for relation " + name);
      decl = expected->relation(name);
    }
    out.schema.add_relation(name, decl);
    out.data.try_emplace(name);

    const json& tuples = rj.contains("tuples") ? rj.at("tuples") : json::array();
    if (!tuples.is_array()) throw LoadError("\"tuples\" of " + name + " must be an array");
    for (const json& tj : tuples) {
      if (!tj.is_array() || static_cast<int>(tj.size()) != decl.arity)
        throw LoadError("arity mismatch in a tuple of " + name);
      TotalTuple t;
      t.reserve(tj.size());
      for (std::size_t k = 0; k < tj.size(); ++k) {
        Value v = value_from_json(tj[k]);
        if (decl.columns) check_cell_type(name, static_cast<int>(k) + 1, (*decl.columns)[k], v);
        t.push_back(std::move(v));
      }
      out.data[name].insert(std::move(t));
    }
  }
  if (j.contains("constants")) {
    for (const json& cj : j.at("constants")) {
      Value v = value_from_json(cj);
      if (v.is_null()) throw LoadError("null cannot be a declared constant");
      out.schema.declare_constant(std::move(v));
    }
  }
  return out;
}

}  // namespace

InstanceN load_instance(const std::string& json_text) {
  return load_total(parse_text(json_text), nullptr);
}

InstanceN load_instance(const std::string& json_text, const Schema& schema) {
  return load_total(parse_text(json_text), &schema);
}

std::string save_instance(const InstanceN& i) {
  json rels = json::object();
  for (const auto& [name, decl] : i.schema.relations()) {
    json rj;
    rj["arity"] = decl.arity;
    if (decl.columns) {
      json cols = json::array();
      for (const ColumnSpec& c : *decl.columns)
        cols.push_back({{"type", c.type == ColumnSpec::Type::Text ? "text" : "int"},
                        {"nullable", c.nullable}});
      rj["columns"] = std::move(cols);
    }
    json tuples = json::array();
    for (const TotalTuple& t : i.at(name)) {
      json tj = json::array();
      for (const Value& v : t) tj.push_back(value_to_json(v));
      tuples.push_back(std::move(tj));
    }
    rj["tuples"] = std::move(tuples);
    rels[name] = std::move(rj);
  }
  json out;
  out["relations"] = std::move(rels);
  if (!i.schema.declared_constants().empty()) {
    json cs = json::array();
    for (const Value& v : i.schema.declared_constants()) cs.push_back(value_to_json(v));
    out["constants"] = std::move(cs);
  }
  return out.dump(2);
}

InstancePartial load_instance_partial(const std::string& json_text) {
  json j = parse_text(json_text);
  if (!j.is_object()) throw LoadError("top level must be an object");
  InstancePartial out;
  const json empty_obj = json::object();
  const json& rels = j.contains("relations") ? j.at("relations") : empty_obj;
  for (auto it = rels.begin(); it != rels.end(); ++it) {
    const std::string& name = it.key();
    const json& rj = it.value();
    RelationDecl decl;
    decl.arity = rj.at("arity").get<int>();
    out.schema.add_relation(name, decl);
    out.data.try_emplace(name);
    for (const json& tj : rj.value("tuples", json::array())) {
      if (!tj.is_object()) throw LoadError("partial tuples must be JSON objects");
      PartialTuple p;
      p.arity = decl.arity;
      for (auto cit = tj.begin(); cit != tj.end(); ++cit) {
        int pos = std::stoi(cit.key());
        if (pos < 1 || pos > decl.arity) throw LoadError("position out of range in " + name);
        Value v = value_from_json(cit.value());
        if (v.is_null()) throw LoadError("partial tuples cannot contain null");
        p.cells.emplace(pos, std::move(v));
      }
      out.data[name].insert(std::move(p));
    }
  }
  if (j.contains("constants"))
    for (const json& cj : j.at("constants")) out.schema.declare_constant(value_from_json(cj));
  return out;
}

std::string save_instance_partial(const InstancePartial& i) {
  json rels = json::object();
  for (const auto& [name, decl] : i.schema.relations()) {
    json rj;
    rj["arity"] = decl.arity;
    json tuples = json::array();
    for (const PartialTuple& p : i.at(name)) {
      json tj = json::object();
      for (const auto& [pos, v] : p.cells) tj[std::to_string(pos)] = value_to_json(v);
      tuples.push_back(std::move(tj));
    }
    rj["tuples"] = std::move(tuples);
    rels[name] = std::move(rj);
  }
  json out;
  out["relations"] = std::move(rels);
  if (!i.schema.declared_constants().empty()) {
    json cs = json::array();
    for (const Value& v : i.schema.declared_constants()) cs.push_back(value_to_json(v));
    out["constants"] = std::move(cs);
  }
  return out.dump(2);
}

namespace {

std::string slot_key(const std::string& rel, const std::vector<int>& positions) {
  std::string key = rel + "~{";
  for (std::size_t k = 0; k < positions.size(); ++k) {
    if (k) key += ",";
    key += std::to_string(positions[k]);
  }
  return key + "}";
}

std::pair<std::string, std::vector<int>> parse_slot_key(const std::string& key) {
  auto tilde = key.find("~{");
  if (tilde == std::string::npos || key.back() != '}')
    throw LoadError("bad slot key \"" + key + "\"");
  std::string rel = key.substr(0, tilde);
  std::vector<int> positions;
  std::string body = key.substr(tilde + 2, key.size() - tilde - 3);
  std::size_t k = 0;
  while (k < body.size()) {
    std::size_t comma = body.find(',', k);
    std::string part = body.substr(k, comma == std::string::npos ? comma : comma - k);
    positions.push_back(std::stoi(part));
    if (comma == std::string::npos) break;
    k = comma + 1;
  }
  return {rel, positions};
}

}  // namespace

InstanceDecomposed load_instance_decomposed(const std::string& json_text) {
  json j = parse_text(json_text);
  if (!j.is_object() || !j.contains("base")) throw LoadError("decomposed file needs \"base\"");
  InstanceDecomposed out;
  for (auto it = j.at("base").begin(); it != j.at("base").end(); ++it) {
    RelationDecl decl;
    decl.arity = it.value().get<int>();
    out.schema.add_relation(it.key(), decl);
  }
  const json empty_obj = json::object();
  const json& slots = j.contains("slots") ? j.at("slots") : empty_obj;
  for (auto it = slots.begin(); it != slots.end(); ++it) {
    auto [rel, positions] = parse_slot_key(it.key());
    if (!out.schema.has_relation(rel)) throw LoadError("unknown relation " + rel);
    out.slots.try_emplace({rel, positions});
    for (const json& tj : it.value()) {
      TotalTuple t;
      for (const json& cj : tj) t.push_back(value_from_json(cj));
      out.insert(rel, positions, std::move(t));
    }
  }
  if (j.contains("constants"))
    for (const json& cj : j.at("constants")) out.schema.declare_constant(value_from_json(cj));
  return out;
}

std::string save_instance_decomposed(const InstanceDecomposed& i) {
  json base = json::object();
  for (const auto& [name, decl] : i.schema.relations()) base[name] = decl.arity;
  json slots = json::object();
  for (const auto& [key, tuples] : i.slots) {
    if (tuples.empty()) continue;  // empty slots elided
    json ts = json::array();
    for (const TotalTuple& t : tuples) {
      json tj = json::array();
      for (const Value& v : t) tj.push_back(value_to_json(v));
      ts.push_back(std::move(tj));
    }
    slots[slot_key(key.first, key.second)] = std::move(ts);
  }
  json out;
  out["base"] = std::move(base);
  out["slots"] = std::move(slots);
  if (!i.schema.declared_constants().empty()) {
    json cs = json::array();
    for (const Value& v : i.schema.declared_constants()) cs.push_back(value_to_json(v));
    out["constants"] = std::move(cs);
  }
  return out.dump(2);
}

}  // namespace nullrel
