#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stabkit/galois.hpp"

namespace stabkit {

// Default cap on exact weight enumeration: codes with q^k beyond this report
// designed bounds instead. Overridable per call and via the CLI.
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

// q^k, saturating instead of overflowing.
std::uint64_t pow_saturating(std::uint64_t q, std::uint64_t k);

struct WeightResult {
    int weight = 0;
    bool exact = false;
};

// An immutable linear code over GF(q), held as its original generator rows
// plus a cached reduced-row-echelon basis. Code equality means equality of
// the canonical bases.
class LinearCode {
public:
    LinearCode(FieldPtr ctx, std::size_t n, std::vector<std::vector<Fe>> generators);

    const FieldPtr& field() const noexcept { return ctx_; }
    std::size_t length() const noexcept { return n_; }
    std::size_t dimension() const noexcept { return basis_.size(); }
    const std::vector<std::vector<Fe>>& generators() const noexcept { return gens_; }
    const std::vector<std::vector<Fe>>& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivot_columns() const noexcept { return pivots_; }

    bool operator==(const LinearCode& other) const;
    bool operator!=(const LinearCode& other) const { return !(*this == other); }

    // Reduces w against the canonical basis and reports full cancellation.
    bool contains_word(const std::vector<Fe>& w) const;

    // message (length k) times the canonical basis.
    std::vector<Fe> encode(const std::vector<Fe>& message) const;

    // A known lower bound on the minimum distance, with a note saying where
    // it came from; `exact` marks bounds certified to be the true distance.
    std::optional<int> designed_distance() const noexcept { return designed_d_; }
    const std::string& designed_note() const noexcept { return designed_note_; }
    LinearCode with_designed_distance(int d, std::string note, bool exact = false) const;

    // Cached exact minimum weight, if one has been computed or certified.
    std::optional<int> known_exact_distance() const;

private:
    friend WeightResult min_weight(const LinearCode&, std::uint64_t, unsigned);
    friend WeightResult min_weight_difference(const LinearCode&, const LinearCode&,
                                              std::uint64_t, unsigned);

    struct DistanceCache {
        std::mutex mu;
        std::optional<int> exact;
    };

    FieldPtr ctx_;
    std::size_t n_ = 0;
    std::vector<std::vector<Fe>> gens_;
    std::vector<std::vector<Fe>> basis_;
    std::vector<std::size_t> pivots_;
    std::optional<int> designed_d_;
    std::string designed_note_;
    std::shared_ptr<DistanceCache> cache_ = std::make_shared<DistanceCache>();
};

// The all-of-GF(q)^n code and the zero code.
LinearCode full_space(FieldPtr ctx, std::size_t n);
LinearCode zero_code(FieldPtr ctx, std::size_t n);

// The dual code: dim(C) + dim(dual(C)) = n and G_C * G_dual^T = 0.
LinearCode dual(const LinearCode& C);

// True iff D is a subcode of C (every generator of D solves against C's
// echelon basis). Requires matching field context and length.
bool contains(const LinearCode& C, const LinearCode& D);

// Exact minimum nonzero weight by full enumeration when q^k <= budget
// (exact = true); otherwise the best available designed bound (exact =
// false). k = 0 is an error. Results are independent of `jobs`.
WeightResult min_weight(const LinearCode& C, std::uint64_t budget = kDefaultBudget,
                        unsigned jobs = 1);

// Minimum weight over codewords of C that are not in D; D must be a proper
// subcode of C. Exact when q^dim(C) <= budget.
WeightResult min_weight_difference(const LinearCode& C, const LinearCode& D,
                                   std::uint64_t budget = kDefaultBudget,
                                   unsigned jobs = 1);

// Exact weight distribution (A_0..A_n) by full enumeration; requires
// q^dim(C) <= budget, else a resource error.
std::vector<boost::multiprecision::cpp_int> weight_distribution(
    const LinearCode& C, std::uint64_t budget = kDefaultBudget);

// MacWilliams transform: given the weight distribution of a code over GF(q),
// returns the weight distribution of its dual (exact integer arithmetic).
std::vector<boost::multiprecision::cpp_int> macwilliams_transform(
    const std::vector<boost::multiprecision::cpp_int>& dist, unsigned q);

// The code of all codewords of C with every coordinate in GF(p^s),
// re-expressed over GF(p^s); computed by solving the linear system that
// expresses membership plus the subfield constraints. Requires s | r.
LinearCode subfield_subcode(const LinearCode& C, unsigned s);

// The GF(p^s)-span of componentwise traces of C's codewords. Requires s | r.
LinearCode trace_code(const LinearCode& C, unsigned s);

} // namespace stabkit
