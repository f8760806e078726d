#include "stabkit/matprod.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "json.hpp"
#include "stabkit/errors.hpp"

namespace stabkit {

namespace {

// rank of an arbitrary entry matrix by Gaussian elimination
std::size_t matrix_rank(const FieldCtx& F, std::vector<Fe> m, std::size_t rows, std::size_t cols) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m[piv * cols + col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap_ranges(m.begin() + piv * cols, m.begin() + (piv + 1) * cols,
                         m.begin() + rank * cols);
        Fe inv = F.inv(m[rank * cols + col]);
        for (std::size_t j = col; j < cols; ++j) m[rank * cols + j] = F.mul(inv, m[rank * cols + j]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i * cols + col] == 0) continue;
            Fe f = m[i * cols + col];
            for (std::size_t j = col; j < cols; ++j)
                m[i * cols + j] = F.sub(m[i * cols + j], F.mul(f, m[rank * cols + j]));
        }
        ++rank;
    }
    return rank;
}

bool square_submatrix_nonsingular(const FieldCtx& F, const MPMatrix& A,
                                  const std::vector<std::size_t>& cols) {
    const std::size_t t = cols.size();
    std::vector<Fe> m(t * t);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) m[i * t + j] = A.at(i, cols[j]);
    return matrix_rank(F, std::move(m), t, t) == t;
}

// minimum distances of the prefix-row codes; empty if a prefix is
// rank-deficient
std::vector<int> compute_delta(const FieldCtx& F, std::size_t s, std::size_t l,
                               const std::vector<Fe>& entries) {
    const unsigned q = F.q();
    if (pow_saturating(q, s) > (std::uint64_t{1} << 20)) return {};
    std::vector<int> delta;
    std::vector<unsigned> msg(s, 0);
    std::vector<int> best(s + 1, static_cast<int>(l) + 1);
    std::vector<bool> deficient(s + 1, false);
    // enumerate all coefficient vectors once; a vector whose last nonzero
    // position is i contributes to prefix codes i..s
    for (;;) {
        std::size_t pos = 0;
        while (pos < s && msg[pos] == q - 1) msg[pos++] = 0;
        if (pos == s) break;
        ++msg[pos];
        std::size_t last = 0;
        for (std::size_t i = 0; i < s; ++i)
            if (msg[i]) last = i + 1;
        std::vector<Fe> word(l, 0);
        for (std::size_t i = 0; i < s; ++i) {
            if (!msg[i]) continue;
            for (std::size_t j = 0; j < l; ++j)
                word[j] = F.add(word[j], F.mul(msg[i], entries[i * l + j]));
        }
        int w = 0;
        for (Fe x : word)
            if (x) ++w;
        if (w == 0) deficient[last] = true;
        for (std::size_t i = last; i <= s; ++i)
            if (w < best[i]) best[i] = w;
    }
    for (std::size_t i = 1; i <= s; ++i) {
        if (deficient[i]) return {};
        delta.push_back(best[i]);
    }
    return delta;
}

} // namespace

MPMatrix::MPMatrix(FieldPtr ctx, std::size_t rows, std::size_t cols, std::vector<Fe> row_major)
    : ctx_(std::move(ctx)), s_(rows), l_(cols), entries_(std::move(row_major)) {
    if (!ctx_) throw schema_error("matrix requires a field context");
    if (s_ < 1 || l_ < 1) throw schema_error("matrix must have positive dimensions");
    if (entries_.size() != s_ * l_) throw schema_error("entry count does not match the shape");
    if (s_ > l_) throw schema_error("matrix must have at least as many columns as rows");
    for (Fe e : entries_) ctx_->check(e);
    const FieldCtx& F = *ctx_;
    full_rank_ = matrix_rank(F, entries_, s_, l_) == s_;
    delta_ = compute_delta(F, s_, l_, entries_);

    // NSC: every t x t column selection from the first t rows is nonsingular
    nsc_ = true;
    for (std::size_t t = 1; t <= s_ && nsc_; ++t) {
        std::vector<std::size_t> cols(t);
        std::iota(cols.begin(), cols.end(), 0);
        for (;;) {
            if (!square_submatrix_nonsingular(F, *this, cols)) {
                nsc_ = false;
                break;
            }
            // next combination
            std::size_t i = t;
            while (i > 0 && cols[i - 1] == l_ - t + i - 1) --i;
            if (i == 0) break;
            ++cols[i - 1];
            for (std::size_t j = i; j < t; ++j) cols[j] = cols[j - 1] + 1;
        }
    }

    orthogonal_ = s_ == l_;
    for (std::size_t i = 0; i < s_ && orthogonal_; ++i)
        for (std::size_t j = 0; j < s_ && orthogonal_; ++j) {
            Fe dot = 0;
            for (std::size_t k = 0; k < l_; ++k) dot = F.add(dot, F.mul(at(i, k), at(j, k)));
            if (dot != (i == j ? F.one() : 0)) orthogonal_ = false;
        }
}

bool is_nsc(const MPMatrix& A) { return A.nsc(); }

std::vector<int> prefix_distances(const MPMatrix& A) {
    if (A.delta().empty())
        throw precondition_error("a row prefix of the matrix is rank-deficient");
    return A.delta();
}

LinearCode mp_code(const std::vector<LinearCode>& constituents, const MPMatrix& A) {
    if (constituents.size() != A.rows())
        throw schema_error("constituent count must equal the matrix row count");
    if (constituents.empty()) throw schema_error("at least one constituent required");
    const FieldPtr& ctx = A.field();
    const std::size_t m = constituents.front().length();
    for (const LinearCode& C : constituents) {
        if (C.field().get() != ctx.get())
            throw schema_error("constituents must share the matrix's field context");
        if (C.length() != m) throw schema_error("constituents must share a common length");
    }
    if (!A.full_rank()) throw schema_error("matrix must have full row rank");

    const FieldCtx& F = *ctx;
    const std::size_t l = A.cols();
    std::vector<std::vector<Fe>> rows;
    for (std::size_t i = 0; i < constituents.size(); ++i) {
        for (const auto& g : constituents[i].basis()) {
            std::vector<Fe> row(m * l);
            for (std::size_t j = 0; j < l; ++j) {
                const Fe a = A.at(i, j);
                for (std::size_t t = 0; t < m; ++t) row[j * m + t] = F.mul(a, g[t]);
            }
            rows.push_back(std::move(row));
        }
    }
    LinearCode out(ctx, m * l, std::move(rows));

    // distance metadata per the product bound
    bool have_all = true, all_exact = true;
    std::vector<int> d(constituents.size());
    for (std::size_t i = 0; i < constituents.size(); ++i) {
        const LinearCode& C = constituents[i];
        if (C.dimension() == 0) {
            have_all = false;
            break;
        }
        if (auto ex = C.known_exact_distance()) {
            d[i] = *ex;
        } else if (auto des = C.designed_distance()) {
            d[i] = *des;
            all_exact = false;
        } else {
            have_all = false;
            break;
        }
    }
    if (have_all && !A.delta().empty()) {
        bool nested = true;
        for (std::size_t i = 0; i + 1 < constituents.size(); ++i)
            if (!contains(constituents[i], constituents[i + 1])) nested = false;
        if (nested || A.nsc()) {
            int bound = std::numeric_limits<int>::max();
            for (std::size_t i = 0; i < constituents.size(); ++i)
                bound = std::min(bound, d[i] * A.delta()[i]);
            out = out.with_designed_distance(bound, "matrix-product distance",
                                             nested && all_exact);
        }
    }
    return out;
}

MPMatrix mp_inverse_transpose(const MPMatrix& A) {
    if (A.rows() != A.cols()) throw schema_error("matrix inverse requires a square matrix");
    if (!A.full_rank()) throw schema_error("matrix inverse requires a nonsingular matrix");
    const FieldCtx& F = *A.field();
    const std::size_t s = A.rows();
    // Gauss-Jordan on [A | I]
    std::vector<Fe> m(s * 2 * s, 0);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) m[i * 2 * s + j] = A.at(i, j);
        m[i * 2 * s + s + i] = F.one();
    }
    for (std::size_t col = 0; col < s; ++col) {
        std::size_t piv = col;
        while (m[piv * 2 * s + col] == 0) ++piv;
        std::swap_ranges(m.begin() + piv * 2 * s, m.begin() + (piv + 1) * 2 * s,
                         m.begin() + col * 2 * s);
        Fe inv = F.inv(m[col * 2 * s + col]);
        for (std::size_t j = 0; j < 2 * s; ++j) m[col * 2 * s + j] = F.mul(inv, m[col * 2 * s + j]);
        for (std::size_t i = 0; i < s; ++i) {
            if (i == col || m[i * 2 * s + col] == 0) continue;
            Fe f = m[i * 2 * s + col];
            for (std::size_t j = 0; j < 2 * s; ++j)
                m[i * 2 * s + j] = F.sub(m[i * 2 * s + j], F.mul(f, m[col * 2 * s + j]));
        }
    }
    std::vector<Fe> out(s * s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) out[i * s + j] = m[j * 2 * s + s + i]; // transpose
    return MPMatrix(A.field(), s, s, std::move(out));
}

LinearCode mp_dual(const std::vector<LinearCode>& constituents, const MPMatrix& A) {
    MPMatrix B = mp_inverse_transpose(A);
    std::vector<LinearCode> duals;
    duals.reserve(constituents.size());
    for (const LinearCode& C : constituents) duals.push_back(dual(C));
    return mp_code(duals, B);
}

std::vector<MPMatrix> enumerate_orthogonal(FieldPtr ctx, std::size_t s, bool require_nsc) {
    if (!ctx) throw schema_error("enumeration requires a field context");
    if (s < 1) throw schema_error("matrix size must be positive");
    const FieldCtx& F = *ctx;
    const unsigned q = F.q();
    if (pow_saturating(q, s) > (std::uint64_t{1} << 20))
        throw budget_error("orthogonal matrix enumeration exceeds the search budget");
    // all row vectors in lexicographic order, keeping the unit-norm ones
    std::vector<std::vector<Fe>> unit;
    std::vector<unsigned> idx(s, 0);
    for (;;) {
        std::vector<Fe> v(idx.begin(), idx.end());
        Fe norm = 0;
        for (Fe x : v) norm = F.add(norm, F.mul(x, x));
        if (norm == F.one()) unit.push_back(std::move(v));
        std::size_t i = s;
        while (i > 0 && idx[i - 1] + 1 == q) idx[--i] = 0;
        if (i == 0) break;
        ++idx[i - 1];
    }
    std::vector<MPMatrix> out;
    std::vector<const std::vector<Fe>*> chosen;
    auto extend = [&](auto&& self) -> void {
        if (chosen.size() == s) {
            std::vector<Fe> entries;
            entries.reserve(s * s);
            for (const auto* row : chosen) entries.insert(entries.end(), row->begin(), row->end());
            MPMatrix A(ctx, s, s, std::move(entries));
            if (!require_nsc || A.nsc()) out.push_back(std::move(A));
            return;
        }
        for (const auto& cand : unit) {
            bool ok = true;
            for (const auto* prev : chosen) {
                Fe dot = 0;
                for (std::size_t k = 0; k < s; ++k) dot = F.add(dot, F.mul(cand[k], (*prev)[k]));
                if (dot != 0) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            chosen.push_back(&cand);
            self(self);
            chosen.pop_back();
        }
    };
    extend(extend);
    return out;
}

LinearCode mp_f2_triple(const LinearCode& C1, const LinearCode& C2) {
    FieldPtr F2 = field_new(2, 1);
    if (C1.field().get() != F2.get() || C2.field().get() != F2.get())
        throw schema_error("binary triple construction requires GF(2) codes");
    for (const LinearCode* C : {&C1, &C2})
        if (!contains(*C, dual(*C)))
            throw precondition_error("constituents must contain their duals");
    MPMatrix A(F2, 3, 3, {1, 0, 1, 1, 1, 0, 1, 1, 1});
    return mp_code({C1, C1, C2}, A);
}

LinearCode mp_f3_pair(const LinearCode& C1, const LinearCode& C2) {
    FieldPtr F3 = field_new(3, 1);
    if (C1.field().get() != F3.get() || C2.field().get() != F3.get())
        throw schema_error("ternary pair construction requires GF(3) codes");
    for (const LinearCode* C : {&C1, &C2})
        if (!contains(*C, dual(*C)))
            throw precondition_error("constituents must contain their duals");
    MPMatrix A(F3, 2, 2, {1, 1, 2, 1});
    return mp_code({C1, C2}, A);
}

std::string mp_matrix_to_json(const MPMatrix& A) {
    nlohmann::json j;
    j["p"] = A.field()->p();
    j["r"] = A.field()->r();
    j["rows"] = A.rows();
    j["cols"] = A.cols();
    j["entries"] = A.entries();
    return j.dump();
}

MPMatrix mp_matrix_from_json(const std::string& text) {
    try {
        nlohmann::json j = nlohmann::json::parse(text);
        FieldPtr ctx = field_new(j.at("p").get<unsigned>(), j.at("r").get<unsigned>());
        return MPMatrix(std::move(ctx), j.at("rows").get<std::size_t>(),
                        j.at("cols").get<std::size_t>(),
                        j.at("entries").get<std::vector<Fe>>());
    } catch (const nlohmann::json::exception& e) {
        throw schema_error(std::string("invalid matrix JSON: ") + e.what());
    }
}

} // namespace stabkit
