#include "nullrel/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "nullrel/constraints.hpp"
#include "nullrel/decomposed.hpp"
#include "nullrel/fole_parser.hpp"
#include "nullrel/instance_io.hpp"
#include "nullrel/nra_parser.hpp"
#include "nullrel/sqlfo.hpp"
#include "nullrel/translate.hpp"

namespace nullrel {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string cell_text(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Null: return "NULL";
    case Value::Kind::Int: return std::to_string(v.as_int());
    case Value::Kind::Text: return v.as_text();
  }
  return "";
}

void print_rows(const Relation& rows, const std::string& format, std::ostream& out) {
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const TotalTuple& t : rows) {
      nlohmann::json row = nlohmann::json::array();
      for (const Value& v : t) {
        if (v.is_null())
          row.push_back(nullptr);
        else if (v.kind() == Value::Kind::Int)
          row.push_back(v.as_int());
        else
          row.push_back(v.as_text());
      }
      arr.push_back(std::move(row));
    }
    out << arr.dump() << "\n";
    return;
  }
  for (const TotalTuple& t : rows) {
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (k) out << "\t";
      out << cell_text(t[k]);
    }
    out << "\n";
  }
}

Value parse_tuple_value(const std::string& token) {
  if (token == "NULL" || token == "null") return Value::null();
  if (!token.empty() && token.front() == '\'' && token.back() == '\'' && token.size() >= 2)
    return Value::text(token.substr(1, token.size() - 2));
  if (!token.empty() &&
      token.find_first_not_of("0123456789", token[0] == '-' ? 1 : 0) == std::string::npos &&
      token != "-")
    return Value::integer(std::stoll(token));
  return Value::text(token);
}

TotalTuple parse_tuple(const std::string& text) {
  TotalTuple out;
  if (text.empty()) return out;
  std::size_t k = 0;
  while (true) {
    std::size_t comma = text.find(',', k);
    out.push_back(parse_tuple_value(text.substr(k, comma == std::string::npos ? comma : comma - k)));
    if (comma == std::string::npos) break;
    k = comma + 1;
  }
  return out;
}

// Relation arities read off the formula's atoms, for translate runs without
// an instance file.
Schema schema_from_formula(const FormulaPtr& f) {
  Schema s;
  std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& g) {
    if (!g) return;
    if (g->kind == Formula::Kind::Atom) {
      int arity = static_cast<int>(g->terms.size());
      std::string rel = g->pred;
      if (g->positions) {
        // a decomposed atom names r~{A}; the base arity is unknown, so use
        // the largest mentioned position
        for (int p : *g->positions) arity = std::max(arity, p);
      }
      if (s.has_relation(rel)) {
        if (s.arity(rel) < arity) s.relation_mut(rel).arity = arity;
      } else {
        s.add_relation(rel, RelationDecl{arity});
      }
    }
    walk(g->lhs);
    walk(g->rhs);
  };
  walk(f);
  return s;
}

int cmd_eval(InstanceN& inst, const std::string& sql, const std::string& nra,
             const std::string& fole, const std::string& format, std::ostream& out) {
  if (!sql.empty()) {
    SqlScript script = parse_sql(sql, inst.schema);
    inst.schema = script.schema;
    Relation rows;
    bool ran = false;
    for (const SqlStatement& st : script.statements) {
      if (st.create) {
        // register an empty relation when the table is new to the instance
        inst.data.try_emplace(st.create->table);
      } else {
        rows = exec_sql(st.query, inst);
        ran = true;
      }
    }
    if (!ran) throw SqlError("no query to run");
    print_rows(rows, format, out);
    return 0;
  }
  if (!nra.empty()) {
    NraPtr e = parse_nra(nra);
    int arity = check_arity(e, inst.schema);
    Relation rows = eval_nra(e, inst);
    if (arity == 0) {
      out << (rows.empty() ? "false" : "true") << "\n";
      return rows.empty() ? 1 : 0;
    }
    print_rows(rows, format, out);
    return 0;
  }
  FormulaPtr f = parse_fole(fole);
  InstancePartial p = to_partial(inst);
  Relation rows = answer_set(f, p);
  if (free_vars(f).empty()) {
    out << (rows.empty() ? "false" : "true") << "\n";
    return rows.empty() ? 1 : 0;
  }
  print_rows(rows, format, out);
  return 0;
}

int cmd_translate(const std::string& from, const std::string& to, const std::string& text,
                  const std::string& instance_path, const std::string& tuple,
                  std::ostream& out) {
  std::optional<Schema> schema;
  if (!instance_path.empty()) schema = load_instance(read_file(instance_path)).schema;

  if (from == "nra" && to == "fole") {
    if (!schema) throw TranslateError("nra-to-fole translation needs --instance for the schema");
    NraPtr e = parse_nra(text);
    TransTuple t = trans_tuple(parse_tuple(tuple));
    out << to_string(omega(e, t, *schema)) << "\n";
    return 0;
  }
  if (from == "fole" && to == "nra") {
    FormulaPtr f = parse_fole(text);
    Schema s = schema ? *schema : schema_from_formula(f);
    out << to_string(fole_to_nra(f, s)) << "\n";
    return 0;
  }
  throw std::runtime_error("supported directions: --from nra --to fole, --from fole --to nra");
}

int cmd_check(const std::string& instance_path, const std::string& spec, std::ostream& out) {
  InstanceN inst = load_instance(read_file(instance_path));
  ConstraintDecl d = parse_constraint(spec);
  bool ok = check_constraint(inst, d);
  out << (ok ? "satisfied" : "violated") << "\n";
  return ok ? 0 : 1;
}

int cmd_convert(const std::string& instance_path, const std::string& to,
                const std::string& out_path, std::ostream& out) {
  std::string text = read_file(instance_path);
  // accept any of the three representations as input, telling them apart by
  // their top-level shape
  InstanceN total;
  nlohmann::json probe = nlohmann::json::parse(text, nullptr, false);
  if (probe.is_object() && probe.contains("base")) {
    total = recompose(load_instance_decomposed(text));
  } else {
    bool partial_tuples = false;
    if (probe.is_object() && probe.contains("relations"))
      for (const auto& rel : probe.at("relations"))
        for (const auto& t : rel.value("tuples", nlohmann::json::array()))
          if (t.is_object()) partial_tuples = true;
    total = partial_tuples ? from_partial(load_instance_partial(text)) : load_instance(text);
  }
  std::string serialized;
  if (to == "total")
    serialized = save_instance(total);
  else if (to == "partial")
    serialized = save_instance_partial(to_partial(total));
  else if (to == "decomposed")
    serialized = save_instance_decomposed(decompose(total));
  else
    throw std::runtime_error("--to takes total, partial or decomposed");
  if (out_path.empty()) {
    out << serialized << "\n";
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    f << serialized;
  }
  return 0;
}

int cmd_repl(InstanceN& inst, const std::string& format, std::istream& in, std::ostream& out) {
  out << "commands: sql <stmt;> | nra <expr> | fole <formula> | check <spec> | quit\n";
  std::string line;
  while (out << "> " << std::flush, std::getline(in, line)) {
    std::istringstream ls(line);
    std::string verb;
    ls >> verb;
    std::string rest;
    std::getline(ls, rest);
    try {
      if (verb.empty()) continue;
      if (verb == "quit" || verb == "exit") break;
      if (verb == "sql")
        cmd_eval(inst, rest, "", "", format, out);
      else if (verb == "nra")
        cmd_eval(inst, "", rest, "", format, out);
      else if (verb == "fole")
        cmd_eval(inst, "", "", rest, format, out);
      else if (verb == "check")
        out << (check_constraint(inst, parse_constraint(rest)) ? "satisfied" : "violated")
            << "\n";
      else
        out << "unknown command " << verb << "\n";
    } catch (const std::exception& e) {
      out << "error: " << e.what() << "\n";
    }
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (const char* budget = std::getenv("NULLREL_NODE_BUDGET")) {
    try {
      set_translation_node_budget(std::stoull(budget));
    } catch (...) {
      err << "ignoring malformed NULLREL_NODE_BUDGET\n";
    }
  }

  CLI::App app{"relational algebra and calculus with SQL null values"};
  app.require_subcommand(1);

  std::string instance, sql, nra, fole, format = "text", tuple, constraint, to, from, out_path;
  std::string query_text;

  CLI::App* eval = app.add_subcommand("eval", "evaluate a query over an instance");
  eval->add_option("--instance", instance, "instance file (JSON)");
  auto* o_sql = eval->add_option("--sql", sql, "SQL script, statements end with ;");
  auto* o_nra = eval->add_option("--nra", nra, "algebra expression");
  auto* o_fole = eval->add_option("--fole", fole, "calculus formula");
  eval->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  o_sql->excludes(o_nra)->excludes(o_fole);
  o_nra->excludes(o_fole);

  CLI::App* translate = app.add_subcommand("translate", "translate between the formalisms");
  translate->add_option("--from", from, "nra or fole")->required();
  translate->add_option("--to", to, "fole or nra")->required();
  translate->add_option("--tuple", tuple, "candidate tuple v1,v2,... (NULL allowed)");
  translate->add_option("--instance", instance, "instance file supplying the schema");
  translate->add_option("text", query_text, "expression or formula")->required();

  CLI::App* check = app.add_subcommand("check", "check an integrity constraint");
  check->add_option("--instance", instance, "instance file (JSON)")->required();
  check->add_option("--constraint", constraint, "unique/pk/notnull/fk specification")
      ->required();

  CLI::App* convert = app.add_subcommand("convert", "convert between representations");
  convert->add_option("--instance", instance, "instance file in any representation")->required();
  convert->add_option("--to", to, "total, partial or decomposed")->required();
  convert->add_option("--out", out_path, "output file (stdout when absent)");

  CLI::App* repl = app.add_subcommand("repl", "interactive loop over one instance");
  repl->add_option("--instance", instance, "instance file (JSON)");
  repl->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (eval->parsed()) {
      if (sql.empty() && nra.empty() && fole.empty())
        throw std::runtime_error("eval needs one of --sql, --nra, --fole");
      InstanceN inst = instance.empty() ? InstanceN{} : load_instance(read_file(instance));
      return cmd_eval(inst, sql, nra, fole, format, out);
    }
    if (translate->parsed()) return cmd_translate(from, to, query_text, instance, tuple, out);
    if (check->parsed()) return cmd_check(instance, constraint, out);
    if (convert->parsed()) return cmd_convert(instance, to, out_path, out);
    if (repl->parsed()) {
      InstanceN inst = instance.empty() ? InstanceN{} : load_instance(read_file(instance));
      return cmd_repl(inst, format, std::cin, out);
    }
  } catch (const NotSafeRangeError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace nullrel
