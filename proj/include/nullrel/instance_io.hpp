#ifndef NULLREL_INSTANCE_IO_HPP
#define NULLREL_INSTANCE_IO_HPP

#include <string>

#include "nullrel/instance.hpp"

namespace nullrel {

struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File format (total representation):
//   {"relations": {name: {"arity": n,
//                         "columns": [{"type": "text"|"int", "nullable": bool}, ...],
//                         "tuples": [[v, ...], ...]}},
//    "constants": [v, ...]}
// Null cells are JSON null, text cells JSON strings, int cells JSON integers.
// "columns" and "constants" are optional; NOT NULL columns reject null cells.
// Duplicate tuples collapse silently (set semantics).
InstanceN load_instance(const std::string& json_text);

// Same, but validates the file against a caller-supplied schema: relations
// unknown to the schema, arity disagreements and type mismatches are errors.
InstanceN load_instance(const std::string& json_text, const Schema& schema);

std::string save_instance(const InstanceN& i);

// Partial representation: tuples are objects mapping 1-based positions to
// non-null values, e.g. {"1": "b"} for the pair <b, NULL>.
InstancePartial load_instance_partial(const std::string& json_text);
std::string save_instance_partial(const InstancePartial& i);

// Decomposed representation: slots keyed "r~{1,2}" under "slots", with the
// base relation arities under "base". Empty slots are elided.
InstanceDecomposed load_instance_decomposed(const std::string& json_text);
std::string save_instance_decomposed(const InstanceDecomposed& i);

}  // namespace nullrel

#endif
