#pragma once

// Evaluation codes from defining sets of monomial exponents, over two kinds
// of point domains: the full affine grid GF(q)^m, and the torus of points
// whose i-th coordinate ranges over the order-N_i subgroup of GF(q)*.
// Covers generalized Reed-Muller codes, hyperbolic codes, and the
// torus evaluation codes consumed by the subfield-subcode pipeline.

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "stabkit/galois.hpp"
#include "stabkit/linear_code.hpp"

namespace stabkit {

enum class DomainKind { Grid, Torus };

class EvaluationDomain;
using DomainPtr = std::shared_ptr<const EvaluationDomain>;

// An ordered list of evaluation points together with the exponent box that
// indexes reduced monomials on it. Immutable; create via grid_domain /
// torus_domain.
class EvaluationDomain {
public:
    const FieldPtr& field() const { return ctx_; }
    DomainKind kind() const { return kind_; }
    unsigned num_vars() const { return m_; }
    // exponent bound per coordinate: alpha_i < box()[i] (grid: q, torus: N_i)
    const std::vector<unsigned>& box() const { return box_; }
    // torus orders N_1..N_m (same storage as box())
    const std::vector<unsigned>& orders() const { return box_; }
    std::size_t num_points() const { return points_.size(); }
    const std::vector<std::vector<Fe>>& points() const { return points_; }

    friend DomainPtr grid_domain(FieldPtr ctx, unsigned m);
    friend DomainPtr torus_domain(FieldPtr ctx, std::vector<unsigned> orders);

private:
    EvaluationDomain() = default;
    FieldPtr ctx_;
    DomainKind kind_ = DomainKind::Grid;
    unsigned m_ = 0;
    std::vector<unsigned> box_;
    std::vector<std::vector<Fe>> points_;
};

// All of GF(q)^m, ordered lexicographically with the first coordinate
// slowest, field elements ordered 0, 1, g, g^2, ...
DomainPtr grid_domain(FieldPtr ctx, unsigned m);

// Points (xi_1^{j_1}, ..., xi_m^{j_m}) with xi_i of order N_i (requires
// N_i | q-1), ordered lexicographically in the exponent vector j.
DomainPtr torus_domain(FieldPtr ctx, std::vector<unsigned> orders);

bool same_domain(const EvaluationDomain& a, const EvaluationDomain& b);

using ExponentTuple = std::vector<unsigned>;

// A finite set of reduced exponent tuples on a domain; elements are kept
// lex-sorted and deduplicated, and generator rows follow that order.
struct DefiningSet {
    DomainPtr domain;
    std::vector<ExponentTuple> elements;

    bool operator==(const DefiningSet& o) const;
    bool operator!=(const DefiningSet& o) const { return !(*this == o); }
};

// Validates, sorts, and deduplicates the element list.
DefiningSet defining_set(DomainPtr domain, std::vector<ExponentTuple> elements);

// Reduction of an out-of-box grid exponent: on GF(q)^m the relation
// x^q = x identifies exponent e >= q with ((e-1) mod (q-1)) + 1.
unsigned reduce_grid_exponent(std::uint64_t e, unsigned q);

// The code spanned by { (X^alpha(P_1), ..., X^alpha(P_n)) : alpha in the set }.
LinearCode evaluate(const DefiningSet& ds);

// --- generalized Reed-Muller codes (grid domains) ---

// All reduced exponent tuples of total degree <= r; 0 <= r <= m(q-1).
DefiningSet rm_defining_set(int r, unsigned m, FieldPtr ctx);

// Alternating binomial sum for the dimension; 0 <= r < m(q-1).
std::int64_t rm_dimension(int r, unsigned m, unsigned q);

// Exact minimum distance (b+1)*q^a where m(q-1) - r = a(q-1) + b, 0 <= b < q-1.
std::int64_t rm_distance(int r, unsigned m, unsigned q);

// Order of the dual code: m(q-1) - (r+1).
int rm_dual_order(int r, unsigned m, unsigned q);

// Convenience: the order-r code with its exact distance attached.
LinearCode rm_code(int r, unsigned m, FieldPtr ctx);

// --- hyperbolic codes (grid domains) ---

// Number of reduced monomials not divisible by X^alpha: q^m - prod(q - alpha_i).
std::uint64_t n_alpha(const ExponentTuple& alpha, unsigned q);

// Smallest achievable n_alpha value >= s (s = q^m maps to the largest
// achievable value q^m - 1; the two parameters give the same code).
std::uint64_t normalize_t(std::uint64_t s, unsigned m, unsigned q);

// Defining sets (Xi_set, Hyp_set) for the dual pair at parameter t:
//   Xi_set  = { alpha : prod(alpha_i + 1) <  q^m - t }
//   Hyp_set = { alpha : prod(q - alpha_i) >= q^m - t }
// t is normalized first; the hyperbolic code is the dual of the Xi code.
std::pair<DefiningSet, DefiningSet> hyp_defining_sets(std::uint64_t t, unsigned m, FieldPtr ctx);

// Minimal T such that the hyperbolic code at t contains its dual iff t >= T.
std::uint64_t hyp_self_orthogonal_threshold(unsigned m, unsigned q);

// Convenience: the hyperbolic code at t with its exact distance q^m - t attached.
LinearCode hyperbolic_code(std::uint64_t t, unsigned m, FieldPtr ctx);

// --- torus duality ---

// Complement of the negated set: H \ { -alpha mod (N_1,...,N_m) : alpha in Delta }.
// Torus domains only; on a grid the dual is not monomial in general.
DefiningSet delta_perp(const DefiningSet& ds);

// --- serialization ---

// JSON object with header fields p, r, s (subfield exponent), the domain
// shape (kind + N or m), and "delta" as an array of integer tuples.
std::string defining_set_to_json(const DefiningSet& ds, unsigned s);

struct ParsedDefiningSet {
    DefiningSet set;
    unsigned s = 0;
};

// Accepts bare integers as 1-tuples and reduces out-of-box exponents
// (mod N_i on a torus, via reduce_grid_exponent on a grid).
ParsedDefiningSet defining_set_from_json(const std::string& text);

} // namespace stabkit
