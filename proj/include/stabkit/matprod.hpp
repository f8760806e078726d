#pragma once

// Matrix-product codes [C_1,...,C_s]·A, the non-singular-by-columns and
// orthogonal matrix tooling used to pick A, and the special dual-containing
// binary and ternary constructions.

#include <cstddef>
#include <string>
#include <vector>

#include "stabkit/galois.hpp"
#include "stabkit/linear_code.hpp"

namespace stabkit {

// A small matrix over a field context with its structural properties
// precomputed: rank, non-singularity by columns, orthogonality (A A^t = I),
// and the minimum distances of the codes spanned by row prefixes.
class MPMatrix {
public:
    MPMatrix(FieldPtr ctx, std::size_t rows, std::size_t cols, std::vector<Fe> row_major);

    const FieldPtr& field() const { return ctx_; }
    std::size_t rows() const { return s_; }
    std::size_t cols() const { return l_; }
    Fe at(std::size_t i, std::size_t j) const { return entries_[i * l_ + j]; }
    const std::vector<Fe>& entries() const { return entries_; }

    bool full_rank() const { return full_rank_; }
    bool nsc() const { return nsc_; }
    bool orthogonal() const { return orthogonal_; }
    // delta()[i-1] = minimum distance of the code spanned by the first i
    // rows; empty when some prefix is rank-deficient
    const std::vector<int>& delta() const { return delta_; }

    bool operator==(const MPMatrix& o) const {
        return ctx_.get() == o.ctx_.get() && s_ == o.s_ && l_ == o.l_ && entries_ == o.entries_;
    }
    bool operator!=(const MPMatrix& o) const { return !(*this == o); }

private:
    FieldPtr ctx_;
    std::size_t s_ = 0, l_ = 0;
    std::vector<Fe> entries_;
    bool full_rank_ = false, nsc_ = false, orthogonal_ = false;
    std::vector<int> delta_;
};

// True iff every t x t minor drawn from the first t rows is nonsingular,
// for t = 1..rows.
bool is_nsc(const MPMatrix& A);

// Prefix-row code distances delta_1..delta_s by exhaustive enumeration;
// a rank-deficient prefix is an error.
std::vector<int> prefix_distances(const MPMatrix& A);

// The code [C_1,...,C_s]·A of length m*cols and dimension sum(k_i).
// A designed distance min_i d_i*delta_i is attached when every constituent
// carries one and either the constituents are nested decreasing or A is
// non-singular by columns; it is exact when the chain is nested and every
// constituent distance is exact.
LinearCode mp_code(const std::vector<LinearCode>& constituents, const MPMatrix& A);

// The dual as [C_1^perp,...,C_s^perp]·(A^{-1})^t; A must be square and
// nonsingular.
LinearCode mp_dual(const std::vector<LinearCode>& constituents, const MPMatrix& A);

// (A^{-1})^t for square nonsingular A.
MPMatrix mp_inverse_transpose(const MPMatrix& A);

// All s x s matrices with A A^t = I, in lexicographic row-major order,
// optionally filtered to the non-singular-by-columns ones.
std::vector<MPMatrix> enumerate_orthogonal(FieldPtr ctx, std::size_t s, bool require_nsc);

// [C1, C1, C2]·A over GF(2) with the fixed full-rank 3x3 matrix whose
// prefix distances are (2,2,1); both constituents must contain their duals.
LinearCode mp_f2_triple(const LinearCode& C1, const LinearCode& C2);

// [C1, C2]·A over GF(3) with the fixed 2x2 matrix of prefix distances
// (2,1); both constituents must contain their duals.
LinearCode mp_f3_pair(const LinearCode& C1, const LinearCode& C2);

// Row-major serialization with a field header.
std::string mp_matrix_to_json(const MPMatrix& A);
MPMatrix mp_matrix_from_json(const std::string& text);

} // namespace stabkit
