#ifndef NULLREL_DECOMPOSED_HPP
#define NULLREL_DECOMPOSED_HPP

#include "nullrel/fole.hpp"
#include "nullrel/instance.hpp"

namespace nullrel {

// Structure-preserving bijection from formulas with null terms to classical
// formulas over the decomposed signature: an atom keeps exactly its non-null
// argument positions, in ascending order.
FormulaPtr omega_f(const FormulaPtr& f);

// Inverse direction; the base schema supplies relation arities so atoms can
// be re-expanded with the null term outside their position set.
FormulaPtr omega_f_inv(const FormulaPtr& f, const Schema& schema);

// Classical satisfaction over the decomposed instance; a zero-ary slot atom
// holds iff its slot contains the zero-tuple.
bool eval_fol_decomposed(const FormulaPtr& f, const InstanceDecomposed& inst,
                         const Assignment& a, const std::set<Value>& domain);

}  // namespace nullrel

#endif
