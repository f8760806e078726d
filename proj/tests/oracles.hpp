#pragma once

// Independent oracles used only by tests. They deliberately avoid the
// library's enumeration and echelon machinery: the naive enumerator rebuilds
// every codeword with a fresh matrix-vector product, and the dual-transform
// route recovers a weight distribution from the dual side in exact big-int
// arithmetic.

#include <boost/multiprecision/cpp_int.hpp>
#include <random>
#include <vector>

#include "stabkit/linear_code.hpp"

namespace oracles {

using boost::multiprecision::cpp_int;
using stabkit::Fe;
using stabkit::FieldPtr;
using stabkit::LinearCode;

// Exact minimum nonzero weight by plain base-q counting over all messages,
// recomputing each codeword from scratch (no Gray codes, no partial sums).
inline int naive_min_weight(const LinearCode& C) {
    const auto& F = *C.field();
    const auto& B = C.basis();
    const std::size_t k = C.dimension();
    const std::size_t n = C.length();
    const unsigned q = F.q();
    std::vector<unsigned> msg(k, 0);
    int best = static_cast<int>(n) + 1;
    for (;;) {
        // advance the message counter; the all-zero message is skipped below
        std::size_t pos = 0;
        while (pos < k && msg[pos] == q - 1) msg[pos++] = 0;
        if (pos == k) break;
        ++msg[pos];
        std::vector<Fe> word(n, 0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j)
                word[j] = F.add(word[j], F.mul(msg[i], B[i][j]));
        int w = 0;
        for (Fe x : word)
            if (x) ++w;
        if (w < best) best = w;
    }
    return best;
}

// Exact minimum weight over C \ D by the same naive walk.
inline int naive_min_weight_difference(const LinearCode& C, const LinearCode& D) {
    const auto& F = *C.field();
    const auto& B = C.basis();
    const std::size_t k = C.dimension();
    const std::size_t n = C.length();
    const unsigned q = F.q();
    std::vector<unsigned> msg(k, 0);
    int best = static_cast<int>(n) + 1;
    for (;;) {
        std::size_t pos = 0;
        while (pos < k && msg[pos] == q - 1) msg[pos++] = 0;
        if (pos == k) break;
        ++msg[pos];
        std::vector<Fe> word(n, 0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j)
                word[j] = F.add(word[j], F.mul(msg[i], B[i][j]));
        if (D.contains_word(word)) continue;
        int w = 0;
        for (Fe x : word)
            if (x) ++w;
        if (w < best) best = w;
    }
    return best;
}

// Full weight distribution (A_0..A_n) by direct enumeration.
inline std::vector<cpp_int> weight_distribution(const LinearCode& C) {
    const auto& F = *C.field();
    const auto& B = C.basis();
    const std::size_t k = C.dimension();
    const std::size_t n = C.length();
    const unsigned q = F.q();
    std::vector<cpp_int> A(n + 1, 0);
    A[0] = 1;
    std::vector<unsigned> msg(k, 0);
    for (;;) {
        std::size_t pos = 0;
        while (pos < k && msg[pos] == q - 1) msg[pos++] = 0;
        if (pos == k) break;
        ++msg[pos];
        std::vector<Fe> word(n, 0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j)
                word[j] = F.add(word[j], F.mul(msg[i], B[i][j]));
        int w = 0;
        for (Fe x : word)
            if (x) ++w;
        A[w] += 1;
    }
    return A;
}

// Weight distribution of the dual of the code whose distribution is A, via
// the dual transform with Krawtchouk coefficients:
//   B_j = (1/|C|) * sum_i A_i * K_j(i),
//   K_j(i) = sum_l (-1)^l (q-1)^(j-l) C(i,l) C(n-i, j-l).
inline std::vector<cpp_int> dual_weight_distribution(const std::vector<cpp_int>& A,
                                                     unsigned q, std::size_t n) {
    std::vector<std::vector<cpp_int>> binom(n + 1, std::vector<cpp_int>(n + 1, 0));
    for (std::size_t i = 0; i <= n; ++i) {
        binom[i][0] = 1;
        for (std::size_t j = 1; j <= i; ++j)
            binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : 0);
    }
    cpp_int size = 0;
    for (const auto& a : A) size += a;
    std::vector<cpp_int> B(n + 1, 0);
    for (std::size_t j = 0; j <= n; ++j) {
        cpp_int acc = 0;
        for (std::size_t i = 0; i <= n; ++i) {
            if (A[i] == 0) continue;
            cpp_int K = 0;
            for (std::size_t l = 0; l <= j; ++l) {
                if (l > i || j - l > n - i) continue;
                cpp_int term = binom[i][l] * binom[n - i][j - l];
                cpp_int pw = 1;
                for (std::size_t t = 0; t < j - l; ++t) pw *= q - 1;
                term *= pw;
                if (l % 2)
                    K -= term;
                else
                    K += term;
            }
            acc += A[i] * K;
        }
        if (acc % size != 0) throw std::logic_error("dual transform gave a non-integer count");
        B[j] = acc / size;
    }
    return B;
}

// Minimum distance of C recovered from the dual side: enumerate dual(C),
// transform its distribution back, and read off the first nonzero index.
inline int min_weight_via_dual_transform(const LinearCode& C) {
    LinearCode D = stabkit::dual(C);
    std::vector<cpp_int> A = oracles::weight_distribution(D);
    std::vector<cpp_int> B = dual_weight_distribution(A, C.field()->q(), C.length());
    for (std::size_t j = 1; j < B.size(); ++j)
        if (B[j] != 0) return static_cast<int>(j);
    throw std::logic_error("dual transform found no nonzero weight");
}

inline LinearCode random_code(FieldPtr F, std::size_t n, std::size_t rows, std::mt19937& rng) {
    std::uniform_int_distribution<unsigned> dist(0, F->q() - 1);
    std::vector<std::vector<Fe>> gens(rows, std::vector<Fe>(n));
    for (auto& row : gens)
        for (auto& v : row) v = dist(rng);
    return LinearCode(std::move(F), n, std::move(gens));
}

} // namespace oracles
