#ifndef NULLREL_NRA_PARSER_HPP
#define NULLREL_NRA_PARSER_HPP

#include <string>

#include "nullrel/nra.hpp"

namespace nullrel {

// Text grammar for algebra expressions:
//   rel NAME | singleton VALUE | singleton NULL
//   sel[COND](e)        COND: i=V, i=j, i!=V, i!=j, i=NULL, i!=NULL,
//                             isNull(i), isNotNull(i), C and C, C or C, not C
//   proj[i,j,...](e)    proj[](e) projects to arity zero
//   (e x e) | (e union e) | (e minus e) | (e intersect e)
//   join[i=k,...](e,e) | louter[i=k,...](e,e)
// Values: 'text' quoted, integer constants written #42 inside selections to
// keep them apart from column references, bare integers elsewhere.
NraPtr parse_nra(const std::string& text);

}  // namespace nullrel

#endif
