#pragma once

// Cyclotomic cosets of exponent tuples under multiplication by p^s, trace
// bases for the coset field extensions, and the resulting subfield-subcode
// and dual constructions over GF(p^s).

#include <cstddef>
#include <map>
#include <vector>

#include "stabkit/evaluation.hpp"
#include "stabkit/galois.hpp"
#include "stabkit/linear_code.hpp"

namespace stabkit {

struct CyclotomicCoset {
    ExponentTuple rep;                   // lex-smallest orbit element
    std::vector<ExponentTuple> elements; // rep, rep*p^s, rep*p^{2s}, ...
    std::size_t size() const { return elements.size(); }
};

struct CosetPartition {
    std::vector<CyclotomicCoset> cosets; // sorted by representative
    std::map<ExponentTuple, std::size_t> index; // element -> coset position
};

// Orbits of Z_{N_1} x ... x Z_{N_m} under componentwise multiplication by
// p^s mod N_i. Requires gcd(p, N_i) = 1.
CosetPartition cosets(const std::vector<unsigned>& N, unsigned p, unsigned s);

// Orbits matching the domain's exponent identification: torus domains use
// cosets(orders, p, s); grid domains act on {1..q-1} modulo q-1 (residue 0
// standing for q-1) with exponent 0 fixed, mirroring x^q = x.
CosetPartition domain_cosets(const EvaluationDomain& dom, unsigned s);

// One basis polynomial T_a(scale * X^exponent) with T_a(y) = sum of the
// first `terms` iterates of y under the p^s-power Frobenius.
struct TracePolynomial {
    ExponentTuple exponent;
    Fe scale;
    unsigned terms;
};

// The i_a polynomials T_a(beta^l X^a), l = 0..i_a-1, with beta the canonical
// primitive element of GF(p^{s*i_a}) inside ctx.
std::vector<TracePolynomial> trace_basis(const CyclotomicCoset& coset, const FieldPtr& ctx,
                                         unsigned s);

// Pointwise evaluation over the domain; every value lies in GF(p^s).
std::vector<Fe> evaluate_trace_polynomial(const TracePolynomial& tp, const EvaluationDomain& dom,
                                          unsigned s);

// Closure of the element set under the domain's p^s-orbit rule.
DefiningSet close_under_frobenius(const DefiningSet& ds, unsigned s);

// The subfield subcode over GF(p^s) of the evaluation code of ds, built
// directly from trace bases over the cosets wholly inside the set. Sets not
// closed under the orbit rule are rejected unless close_orbits is true.
LinearCode subfield_code_from_delta(const DefiningSet& ds, unsigned s, bool close_orbits = false);

// The dual of subfield_code_from_delta. On a torus it is assembled from
// trace bases over the cosets meeting the complement-of-negated set; on a
// grid it falls back to the generic dual.
LinearCode dual_subfield_code(const DefiningSet& ds, unsigned s, bool close_orbits = false);

// Whether the subfield subcode is contained in its own dual's dual-side
// code, i.e. dual_subfield_code contains subfield_code_from_delta. On a
// torus this is decided by the coset criterion: every coset inside the set
// must meet the complement of the negated set.
bool css_containment(const DefiningSet& ds, unsigned s, bool close_orbits = false);

} // namespace stabkit
