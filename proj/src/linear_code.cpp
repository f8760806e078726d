#include "stabkit/linear_code.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <thread>

namespace stabkit {

namespace {

// Gauss-Jordan to reduced row echelon form; returns pivot columns in order
// and shrinks `rows` to the rank.
void rref_in_place(const FieldCtx& F, std::vector<std::vector<Fe>>& rows,
                   std::vector<std::size_t>& pivots) {
    pivots.clear();
    const std::size_t m = rows.size();
    const std::size_t n = rows.empty() ? 0 : rows[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m; ++col) {
        std::size_t piv = rank;
        while (piv < m && rows[piv][col] == 0) ++piv;
        if (piv == m) continue;
        std::swap(rows[rank], rows[piv]);
        Fe inv = F.inv(rows[rank][col]);
        if (inv != 1)
            for (std::size_t j = col; j < n; ++j) rows[rank][j] = F.mul(rows[rank][j], inv);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == rank) continue;
            Fe c = rows[i][col];
            if (c == 0) continue;
            for (std::size_t j = col; j < n; ++j)
                rows[i][j] = F.sub(rows[i][j], F.mul(c, rows[rank][j]));
        }
        pivots.push_back(col);
        ++rank;
    }
    rows.resize(rank);
}

bool all_zero(const std::vector<Fe>& v) {
    for (Fe x : v)
        if (x != 0) return false;
    return true;
}

// --- exact weight enumeration -------------------------------------------
//
// Both enumerators walk one representative per projective class (first
// nonzero message coefficient fixed to 1); weights and subcode membership
// are invariant under scaling, so the minimum matches the full enumeration.

// Binary codes: basis rows packed 64 coordinates per word, message space
// walked in Gray-code order so each step XORs a single row.
struct PackedBits {
    std::size_t n = 0, W = 0;
    std::vector<std::vector<std::uint64_t>> rows;
    std::vector<std::size_t> pivots;

    explicit PackedBits(const LinearCode& C) : n(C.length()), W((C.length() + 63) / 64) {
        for (const auto& r : C.basis()) {
            std::vector<std::uint64_t> packed(W, 0);
            for (std::size_t j = 0; j < n; ++j)
                if (r[j]) packed[j / 64] |= std::uint64_t{1} << (j % 64);
            rows.push_back(std::move(packed));
        }
        pivots = C.pivot_columns();
    }

    bool member(const std::vector<std::uint64_t>& w) const {
        std::vector<std::uint64_t> t = w;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (t[pivots[i] / 64] >> (pivots[i] % 64) & 1)
                for (std::size_t j = 0; j < W; ++j) t[j] ^= rows[i][j];
        for (std::uint64_t x : t)
            if (x) return false;
        return true;
    }
};

int packed_min_weight(const LinearCode& C, const LinearCode* exclude, unsigned jobs) {
    PackedBits B(C);
    std::optional<PackedBits> D;
    if (exclude) D.emplace(*exclude);
    const std::size_t k = B.rows.size();
    const std::uint64_t total = std::uint64_t{1} << k;

    std::atomic<int> global_min(static_cast<int>(C.length()) + 1);
    auto run_range = [&](std::uint64_t a, std::uint64_t b) {
        if (a >= b) return;
        std::vector<std::uint64_t> cur(B.W, 0);
        std::uint64_t g = a ^ (a >> 1);
        for (std::size_t i = 0; i < k; ++i)
            if (g >> i & 1)
                for (std::size_t j = 0; j < B.W; ++j) cur[j] ^= B.rows[i][j];
        for (std::uint64_t idx = a;; ++idx) {
            int w = 0;
            for (std::uint64_t x : cur) w += std::popcount(x);
            int seen = global_min.load(std::memory_order_relaxed);
            if (w < seen && (!D || !D->member(cur))) {
                while (w < seen &&
                       !global_min.compare_exchange_weak(seen, w, std::memory_order_relaxed)) {
                }
            }
            if (idx + 1 >= b) break;
            std::size_t flip = std::countr_zero(idx + 1);
            for (std::size_t j = 0; j < B.W; ++j) cur[j] ^= B.rows[flip][j];
        }
    };

    unsigned nt = std::max(1u, std::min<unsigned>(jobs, std::thread::hardware_concurrency()));
    if (nt <= 1 || total < (std::uint64_t{1} << 16)) {
        run_range(1, total);
    } else {
        std::vector<std::thread> pool;
        std::uint64_t chunk = (total - 1 + nt - 1) / nt;
        for (unsigned t = 0; t < nt; ++t) {
            std::uint64_t a = 1 + t * chunk;
            std::uint64_t b = std::min<std::uint64_t>(total, a + chunk);
            if (a < b) pool.emplace_back(run_range, a, b);
        }
        for (auto& th : pool) th.join();
    }
    return global_min.load();
}

// Any field: odometer over message suffixes with partial-sum reuse. A task
// fixes the first nonzero coefficient position j (value 1) and the next
// coefficient's value, so work splits deterministically across threads.
int generic_min_weight(const LinearCode& C, const LinearCode* exclude, unsigned jobs) {
    const FieldCtx& F = *C.field();
    const auto& basis = C.basis();
    const std::size_t k = C.dimension();
    const std::size_t n = C.length();
    const unsigned q = F.q();

    // scaled[i][v] = v * basis[i]
    std::vector<std::vector<std::vector<Fe>>> scaled(k);
    for (std::size_t i = 0; i < k; ++i) {
        scaled[i].assign(q, std::vector<Fe>(n));
        for (unsigned v = 0; v < q; ++v)
            for (std::size_t j = 0; j < n; ++j) scaled[i][v][j] = F.mul(v, basis[i][j]);
    }

    struct Task {
        std::size_t j;
        int v; // value of coefficient j+1, or -1 when j is the last position
    };
    std::vector<Task> tasks;
    for (std::size_t j = 0; j + 1 < k; ++j)
        for (unsigned v = 0; v < q; ++v) tasks.push_back({j, static_cast<int>(v)});
    tasks.push_back({k - 1, -1});

    std::atomic<int> global_min(static_cast<int>(n) + 1);
    std::atomic<std::size_t> next_task(0);

    auto consider = [&](const std::vector<Fe>& word, std::vector<Fe>& scratch) {
        int seen = global_min.load(std::memory_order_relaxed);
        int w = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (word[j]) ++w;
            if (w >= seen) return;
        }
        if (exclude) {
            scratch = word;
            const auto& db = exclude->basis();
            const auto& dp = exclude->pivot_columns();
            for (std::size_t i = 0; i < db.size(); ++i) {
                Fe c = scratch[dp[i]];
                if (c == 0) continue;
                for (std::size_t j2 = 0; j2 < n; ++j2)
                    scratch[j2] = F.sub(scratch[j2], F.mul(c, db[i][j2]));
            }
            if (all_zero(scratch)) return;
        }
        while (w < seen && !global_min.compare_exchange_weak(seen, w, std::memory_order_relaxed)) {
        }
    };

    auto worker = [&] {
        std::vector<Fe> scratch(n);
        for (;;) {
            std::size_t t = next_task.fetch_add(1);
            if (t >= tasks.size()) return;
            const Task task = tasks[t];
            const std::size_t j = task.j;
            std::vector<Fe> base(n);
            for (std::size_t c = 0; c < n; ++c) base[c] = basis[j][c];
            std::size_t first_free;
            if (task.v < 0) {
                first_free = k; // no free suffix
            } else {
                for (std::size_t c = 0; c < n; ++c)
                    base[c] = F.add(base[c], scaled[j + 1][task.v][c]);
                first_free = j + 2;
            }
            const std::size_t t_len = k - first_free;
            std::vector<unsigned> digits(t_len, 0);
            std::vector<std::vector<Fe>> part(t_len + 1, std::vector<Fe>(n));
            part[0] = base;
            for (std::size_t i = 0; i < t_len; ++i) part[i + 1] = part[i]; // digits start at 0
            for (;;) {
                consider(part[t_len], scratch);
                // advance the odometer
                std::size_t pos = t_len;
                while (pos > 0 && digits[pos - 1] == q - 1) {
                    digits[pos - 1] = 0;
                    --pos;
                }
                if (pos == 0) break;
                ++digits[pos - 1];
                for (std::size_t i = pos - 1; i < t_len; ++i) {
                    const auto& add_row = scaled[first_free + i][digits[i]];
                    for (std::size_t c = 0; c < n; ++c)
                        part[i + 1][c] = F.add(part[i][c], add_row[c]);
                }
            }
        }
    };

    unsigned nt = std::max(1u, std::min<unsigned>(jobs, std::thread::hardware_concurrency()));
    nt = std::min<unsigned>(nt, tasks.size());
    if (nt <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return global_min.load();
}

int enumerate_min_weight(const LinearCode& C, const LinearCode* exclude, unsigned jobs) {
    if (C.dimension() >= 48)
        throw budget_error("full enumeration of q^" + std::to_string(C.dimension()) +
                           " codewords is not tractable");
    if (C.field()->q() == 2) return packed_min_weight(C, exclude, jobs);
    return generic_min_weight(C, exclude, jobs);
}

} // namespace

std::uint64_t pow_saturating(std::uint64_t q, std::uint64_t k) {
    const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t acc = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        if (acc > cap / q) return cap;
        acc *= q;
    }
    return acc;
}

LinearCode::LinearCode(FieldPtr ctx, std::size_t n, std::vector<std::vector<Fe>> generators)
    : ctx_(std::move(ctx)), n_(n), gens_(std::move(generators)) {
    if (!ctx_) throw schema_error("linear code requires a field context");
    if (n_ == 0) throw schema_error("linear code length must be positive");
    for (const auto& row : gens_) {
        if (row.size() != n_)
            throw schema_error("generator row length " + std::to_string(row.size()) +
                               " does not match code length " + std::to_string(n_));
        for (Fe v : row) ctx_->check(v);
    }
    basis_ = gens_;
    rref_in_place(*ctx_, basis_, pivots_);
}

bool LinearCode::operator==(const LinearCode& other) const {
    return ctx_.get() == other.ctx_.get() && n_ == other.n_ && basis_ == other.basis_;
}

bool LinearCode::contains_word(const std::vector<Fe>& w) const {
    if (w.size() != n_) throw schema_error("word length does not match code length");
    std::vector<Fe> t = w;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        Fe c = t[pivots_[i]];
        if (c == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) t[j] = ctx_->sub(t[j], ctx_->mul(c, basis_[i][j]));
    }
    return all_zero(t);
}

std::vector<Fe> LinearCode::encode(const std::vector<Fe>& message) const {
    if (message.size() != basis_.size())
        throw schema_error("message length does not match code dimension");
    std::vector<Fe> out(n_, 0);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (message[i] == 0) continue;
        for (std::size_t j = 0; j < n_; ++j)
            out[j] = ctx_->add(out[j], ctx_->mul(message[i], basis_[i][j]));
    }
    return out;
}

LinearCode LinearCode::with_designed_distance(int d, std::string note, bool exact) const {
    if (d < 1 || static_cast<std::size_t>(d) > n_)
        throw schema_error("designed distance out of range");
    LinearCode out(*this);
    out.cache_ = std::make_shared<DistanceCache>();
    {
        std::lock_guard<std::mutex> lk(cache_->mu);
        out.cache_->exact = cache_->exact;
    }
    out.designed_d_ = d;
    out.designed_note_ = std::move(note);
    if (exact) out.cache_->exact = d;
    return out;
}

std::optional<int> LinearCode::known_exact_distance() const {
    std::lock_guard<std::mutex> lk(cache_->mu);
    return cache_->exact;
}

LinearCode full_space(FieldPtr ctx, std::size_t n) {
    std::vector<std::vector<Fe>> rows(n, std::vector<Fe>(n, 0));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1;
    return LinearCode(std::move(ctx), n, std::move(rows)).with_designed_distance(1, "full space", true);
}

LinearCode zero_code(FieldPtr ctx, std::size_t n) { return LinearCode(std::move(ctx), n, {}); }

LinearCode dual(const LinearCode& C) {
    const FieldCtx& F = *C.field();
    const std::size_t n = C.length();
    const std::size_t k = C.dimension();
    std::vector<char> is_pivot(n, 0);
    for (std::size_t c : C.pivot_columns()) is_pivot[c] = 1;
    std::vector<std::vector<Fe>> rows;
    rows.reserve(n - k);
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Fe> v(n, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < k; ++i) v[C.pivot_columns()[i]] = F.neg(C.basis()[i][f]);
        rows.push_back(std::move(v));
    }
    return LinearCode(C.field(), n, std::move(rows));
}

bool contains(const LinearCode& C, const LinearCode& D) {
    if (C.field().get() != D.field().get())
        throw schema_error("containment requires codes over the same field context");
    if (C.length() != D.length())
        throw schema_error("containment requires codes of the same length");
    for (const auto& row : D.basis())
        if (!C.contains_word(row)) return false;
    return true;
}

WeightResult min_weight(const LinearCode& C, std::uint64_t budget, unsigned jobs) {
    if (C.dimension() == 0)
        throw precondition_error("minimum distance of a zero-dimensional code is undefined");
    {
        std::lock_guard<std::mutex> lk(C.cache_->mu);
        if (C.cache_->exact) {
            if (C.designed_d_ && *C.cache_->exact < *C.designed_d_)
                throw precondition_error("known minimum weight " + std::to_string(*C.cache_->exact) +
                                         " contradicts the designed bound " +
                                         std::to_string(*C.designed_d_) + " (" + C.designed_note_ + ")");
            return {*C.cache_->exact, true};
        }
    }
    if (pow_saturating(C.field()->q(), C.dimension()) > budget) {
        if (C.designed_d_) return {*C.designed_d_, false};
        return {1, false};
    }
    int w = enumerate_min_weight(C, nullptr, jobs);
    if (C.designed_d_ && w < *C.designed_d_)
        throw precondition_error("enumerated minimum weight " + std::to_string(w) +
                                 " contradicts the designed bound " +
                                 std::to_string(*C.designed_d_) + " (" + C.designed_note_ + ")");
    std::lock_guard<std::mutex> lk(C.cache_->mu);
    C.cache_->exact = w;
    return {w, true};
}

WeightResult min_weight_difference(const LinearCode& C, const LinearCode& D,
                                   std::uint64_t budget, unsigned jobs) {
    if (C.field().get() != D.field().get() || C.length() != D.length())
        throw schema_error("set difference requires codes over the same field and length");
    if (!contains(C, D))
        throw schema_error("set difference requires the second code to be a subcode of the first");
    if (D.dimension() == C.dimension())
        throw schema_error("set difference of a code with itself is empty");
    if (pow_saturating(C.field()->q(), C.dimension()) > budget) {
        if (C.designed_d_) return {*C.designed_d_, false};
        return {1, false};
    }
    return {enumerate_min_weight(C, &D, jobs), true};
}

std::vector<boost::multiprecision::cpp_int> weight_distribution(const LinearCode& C,
                                                                std::uint64_t budget) {
    using boost::multiprecision::cpp_int;
    const std::size_t n = C.length();
    std::vector<cpp_int> dist(n + 1, 0);
    const std::size_t k = C.dimension();
    if (k == 0) {
        dist[0] = 1;
        return dist;
    }
    const FieldCtx& F = *C.field();
    const unsigned q = F.q();
    if (pow_saturating(q, k) > budget)
        throw budget_error("weight distribution of q^" + std::to_string(k) +
                           " codewords exceeds the enumeration budget");
    const auto& B = C.basis();
    if (q == 2) {
        // Gray-code walk over all 2^k words, one basis-row XOR per step.
        const std::size_t blocks = (n + 63) / 64;
        std::vector<std::uint64_t> packed(k * blocks, 0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (B[i][j]) packed[i * blocks + j / 64] |= std::uint64_t{1} << (j % 64);
        std::vector<std::uint64_t> counts(n + 1, 0);
        std::vector<std::uint64_t> cur(blocks, 0);
        counts[0] += 1;
        const std::uint64_t total = std::uint64_t{1} << k;
        for (std::uint64_t step = 1; step < total; ++step) {
            const unsigned bit = static_cast<unsigned>(std::countr_zero(step));
            int w = 0;
            for (std::size_t b = 0; b < blocks; ++b) {
                cur[b] ^= packed[bit * blocks + b];
                w += std::popcount(cur[b]);
            }
            counts[static_cast<std::size_t>(w)] += 1;
        }
        for (std::size_t i = 0; i <= n; ++i) dist[i] = counts[i];
        return dist;
    }
    // generic odometer over all q^k messages, updating the word and its
    // weight incrementally (counts fit uint64 because q^k <= budget)
    std::vector<std::uint64_t> counts(n + 1, 0);
    std::vector<Fe> msg(k, 0);
    std::vector<Fe> word(n, 0);
    int w = 0;
    counts[0] += 1;
    for (;;) {
        std::size_t i = 0;
        while (i < k && msg[i] + 1 == q) {
            // subtract msg[i]*B[i] (resetting digit to 0)
            for (std::size_t j = 0; j < n; ++j) {
                const Fe b = B[i][j];
                if (b == 0) continue;
                const Fe old = word[j];
                const Fe nw = F.sub(old, F.mul(msg[i], b));
                w += (nw != 0) - (old != 0);
                word[j] = nw;
            }
            msg[i] = 0;
            ++i;
        }
        if (i == k) break;
        // label steps are not field increments in non-prime fields, so add
        // the true delta (msg[i]+1) - msg[i]
        const Fe delta = F.sub(static_cast<Fe>(msg[i] + 1), msg[i]);
        ++msg[i];
        for (std::size_t j = 0; j < n; ++j) {
            const Fe b = B[i][j];
            if (b == 0) continue;
            const Fe old = word[j];
            const Fe nw = F.add(old, F.mul(delta, b));
            w += (nw != 0) - (old != 0);
            word[j] = nw;
        }
        counts[static_cast<std::size_t>(w)] += 1;
    }
    for (std::size_t i = 0; i <= n; ++i) dist[i] = counts[i];
    return dist;
}

std::vector<boost::multiprecision::cpp_int> macwilliams_transform(
    const std::vector<boost::multiprecision::cpp_int>& dist, unsigned q) {
    using boost::multiprecision::cpp_int;
    if (dist.empty()) throw schema_error("weight distribution must cover weights 0..n");
    const std::size_t n = dist.size() - 1;
    cpp_int size = 0;
    for (const auto& a : dist) size += a;
    if (size == 0) throw schema_error("weight distribution describes an empty code");
    // Pascal triangle up to n
    std::vector<std::vector<cpp_int>> ch(n + 1, std::vector<cpp_int>(n + 1, 0));
    for (std::size_t i = 0; i <= n; ++i) {
        ch[i][0] = 1;
        for (std::size_t j = 1; j <= i; ++j)
            ch[i][j] = ch[i - 1][j - 1] + (j <= i - 1 ? ch[i - 1][j] : 0);
    }
    std::vector<cpp_int> qm1pow(n + 1);
    qm1pow[0] = 1;
    for (std::size_t i = 1; i <= n; ++i) qm1pow[i] = qm1pow[i - 1] * (q - 1);
    std::vector<cpp_int> out(n + 1, 0);
    for (std::size_t j = 0; j <= n; ++j) {
        cpp_int acc = 0;
        for (std::size_t i = 0; i <= n; ++i) {
            if (dist[i] == 0) continue;
            // Krawtchouk K_j(i) = sum_l (-1)^l (q-1)^(j-l) C(i,l) C(n-i, j-l)
            cpp_int kv = 0;
            for (std::size_t l = 0; l <= j && l <= i; ++l) {
                if (j - l > n - i) continue;
                cpp_int term = qm1pow[j - l] * ch[i][l] * ch[n - i][j - l];
                if (l % 2) kv -= term;
                else kv += term;
            }
            acc += dist[i] * kv;
        }
        cpp_int quot = acc / size;
        if (quot * size != acc)
            throw std::logic_error("MacWilliams transform produced a non-integer count");
        out[j] = quot;
    }
    return out;
}

LinearCode subfield_subcode(const LinearCode& C, unsigned s) {
    const FieldCtx& F = *C.field();
    if (s == 0 || F.r() % s != 0)
        throw schema_error("subfield_subcode: subfield degree must divide the field degree");
    const std::size_t n = C.length();
    if (s == F.r()) return LinearCode(C.field(), n, C.basis());
    FieldPtr S = field_new(F.p(), s);
    const std::size_t k = C.dimension();
    if (k == 0) return zero_code(S, n);

    SubfieldDecomposition dec(C.field(), s);
    const unsigned e = dec.e();
    const auto& B = C.basis();

    // Unknowns u[i*e + tau] over GF(p^s) describe messages m_i = sum_tau
    // u[i,tau] g^tau. For every coordinate j the components of the resulting
    // word along g^1..g^(e-1) must vanish; the nullspace of that system is
    // exactly the set of messages encoding subfield-rational words.
    std::vector<std::vector<Fe>> cons;
    cons.reserve(n * (e - 1));
    std::vector<Fe> gpow(e);
    for (unsigned t = 0; t < e; ++t) gpow[t] = F.pow(F.generator(), t);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Fe>> rows_j(e - 1, std::vector<Fe>(k * e, 0));
        for (std::size_t i = 0; i < k; ++i)
            for (unsigned tau = 0; tau < e; ++tau) {
                std::vector<Fe> cy = dec.coords(F.mul(gpow[tau], B[i][j]));
                for (unsigned t = 1; t < e; ++t) rows_j[t - 1][i * e + tau] = cy[t];
            }
        for (auto& r : rows_j) cons.push_back(std::move(r));
    }

    std::vector<std::size_t> cpiv;
    rref_in_place(*S, cons, cpiv);
    std::vector<char> is_pivot(k * e, 0);
    for (std::size_t c : cpiv) is_pivot[c] = 1;

    std::vector<std::vector<Fe>> out_rows;
    for (std::size_t f = 0; f < k * e; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Fe> u(k * e, 0);
        u[f] = 1;
        for (std::size_t i = 0; i < cons.size(); ++i) u[cpiv[i]] = S->neg(cons[i][f]);
        std::vector<Fe> m(k, 0);
        for (std::size_t i = 0; i < k; ++i)
            for (unsigned tau = 0; tau < e; ++tau)
                m[i] = F.add(m[i], F.mul(F.lift_from_subfield(S, u[i * e + tau]), gpow[tau]));
        std::vector<Fe> word = C.encode(m);
        std::vector<Fe> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = dec.down(word[j]);
        out_rows.push_back(std::move(row));
    }
    return LinearCode(S, n, std::move(out_rows));
}

LinearCode trace_code(const LinearCode& C, unsigned s) {
    const FieldCtx& F = *C.field();
    if (s == 0 || F.r() % s != 0)
        throw schema_error("trace_code: subfield degree must divide the field degree");
    const std::size_t n = C.length();
    if (s == F.r()) return LinearCode(C.field(), n, C.basis());
    FieldPtr S = field_new(F.p(), s);
    if (C.dimension() == 0) return zero_code(S, n);

    SubfieldDecomposition dec(C.field(), s);
    const unsigned e = dec.e();
    std::vector<Fe> gpow(e);
    for (unsigned t = 0; t < e; ++t) gpow[t] = F.pow(F.generator(), t);

    // tr is GF(p^s)-linear, so traces of g^tau-multiples of basis rows span
    // the full trace code.
    std::vector<std::vector<Fe>> rows;
    rows.reserve(C.dimension() * e);
    for (const auto& b : C.basis())
        for (unsigned tau = 0; tau < e; ++tau) {
            std::vector<Fe> row(n);
            for (std::size_t j = 0; j < n; ++j) {
                Fe t = F.trace(F.mul(gpow[tau], b[j]), s);
                auto down = F.subfield_embed(t, s);
                if (!down) throw precondition_error("trace image left the subfield");
                row[j] = *down;
            }
            rows.push_back(std::move(row));
        }
    return LinearCode(S, n, std::move(rows));
}

} // namespace stabkit
