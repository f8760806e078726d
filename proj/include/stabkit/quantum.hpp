#pragma once

// Stabilizer-code parameter derivation from classical codes: the CSS
// construction (two-code and self-dual-containing forms), Steane's
// enlargement, parameter propagation (extension, subcodes), and the
// finite-length quantum Gilbert-Varshamov comparison.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stabkit/linear_code.hpp"
#include "stabkit/matprod.hpp"

namespace stabkit {

// One step of a derivation: which rule produced the parameters and a
// deterministic, human-readable description of its inputs.
struct ProvenanceStep {
    std::string rule;
    std::string detail;

    bool operator==(const ProvenanceStep& o) const { return rule == o.rule && detail == o.detail; }
};

// Parameters [[n, k, d]]_q of a stabilizer code together with how they
// were obtained. d_bound is a lower bound on the minimum distance,
// exact when d_exact is set. purity, when present, is a weight below
// which the code has no undetectable stabilizer-equivalent errors.
struct QuantumParams {
    unsigned q = 0;
    std::size_t n = 0;
    std::size_t k = 0;
    int d_bound = 1;
    bool d_exact = false;
    std::optional<int> purity;
    std::vector<ProvenanceStep> provenance;
};

// CSS construction from a pair of codes with dual(C2) contained in C1:
// [[n, k1+k2-n, d]] with d the minimum weight over (C1 minus dual(C2))
// union (C2 minus dual(C1)), pure to min of the constituent distances.
// d is exact when the difference weights can be settled within budget
// (by direct enumeration or by comparing weight distributions through
// the duals); otherwise it degrades to the designed bound.
QuantumParams css_pair(const LinearCode& C1, const LinearCode& C2,
                       std::uint64_t budget = kDefaultBudget);

// CSS construction from a single dual-containing code: [[n, 2k-n, >=d]],
// pure to d. Same distance routes as css_pair with both sides equal.
QuantumParams css_self(const LinearCode& C, std::uint64_t budget = kDefaultBudget);

// Steane's enlargement of a dual-containing code C by a larger code Cp
// (C inside Cp, dim Cp >= dim C + 2): [[n, k+k'-n, >= min{d', ceil((q+1)d''/q)}]]
// with d' the minimum weight of C minus dual(Cp) and d'' that of Cp minus
// dual(Cp). The result is always reported as a bound.
QuantumParams steane(const LinearCode& C, const LinearCode& Cp,
                     std::uint64_t budget = kDefaultBudget);

// Length extension: [[n+1, k, >=d]]. The distance is kept as an assumed
// bound (flagged in provenance); purity is dropped.
QuantumParams extend(const QuantumParams& src);

// Parameter propagation to a subcode: [[n, k_new, >=d]] for k_new < k.
QuantumParams subcode(const QuantumParams& src, std::size_t k_new);

// True when the parameters meet or beat the finite-length quantum
// Gilbert-Varshamov existence threshold (Feng-Ma form): with n-k even,
// a pure [[n,k,d]]_q exists whenever
//   (q^(n-k+2) - 1)/(q^2 - 1) > sum_{i=1}^{d-1} (q^2-1)^(i-1) C(n,i),
// so the parameters exceed the bound when the inequality fails. When
// n and k have different parities the comparison is made at (n, k-1, d).
// Returns false for d < 2.
bool exceeds_gv(const QuantumParams& Q);

// Matrix-product pipeline: builds [C_1,...,C_s]*A, verifies computationally
// that it contains its dual, and applies the self-dual CSS construction.
QuantumParams quantum_from_mp(const std::vector<LinearCode>& constituents, const MPMatrix& A,
                              std::uint64_t budget = kDefaultBudget);

// Matrix-product pipeline with enlargement: builds the inner and outer
// matrix-product codes, verifies the inner one contains its dual and is
// contained in the outer one, and applies Steane's enlargement.
QuantumParams quantum_from_mp(const std::vector<LinearCode>& inner,
                              const std::vector<LinearCode>& outer, const MPMatrix& A,
                              std::uint64_t budget = kDefaultBudget);

// JSON round trip: {q, n, k, d_bound, d_exact, purity, provenance[]}.
// Serialization is deterministic; parsing validates ranges and the
// non-empty provenance invariant.
std::string quantum_params_to_json(const QuantumParams& Q);
QuantumParams quantum_params_from_json(const std::string& text);

// One CSV row "n,k,d,field" (d rendered ">=d" when the value is a bound)
// and the same row in markdown table syntax.
std::string quantum_params_to_csv(const QuantumParams& Q);
std::string quantum_params_to_markdown(const QuantumParams& Q);

} // namespace stabkit
