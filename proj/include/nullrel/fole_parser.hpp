#ifndef NULLREL_FOLE_PARSER_HPP
#define NULLREL_FOLE_PARSER_HPP

#include <string>

#include "nullrel/fole.hpp"

namespace nullrel {

// Text grammar for calculus formulas:
//   P(t,...)            atoms; terms are 'text', integers, NULL, variables
//   R~{1,2}(t,t), R~{}  atoms over the decomposed signature
//   t1 = t2             equality (no NULL)
//   not f, f and g, f or g, (f)
//   exists x,y. f       forall x. f      (body extends to the right)
//   true, false
// Keywords are case-insensitive; variable and predicate names case-sensitive.
FormulaPtr parse_fole(const std::string& text);

}  // namespace nullrel

#endif
