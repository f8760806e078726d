#include "stabkit/galois.hpp"

#include <map>
#include <mutex>

namespace stabkit {

namespace {

struct ModulusRow {
    unsigned p;
    unsigned r;
    unsigned coeffs[9]; // constant term first; exactly r+1 entries used
};

// Bundled moduli for every supported field. Each is monic with a primitive
// root; construction re-verifies that below. The table is norm-compatible
// across subfields, so the subfield embeddings in this module are field
// isomorphisms.
constexpr ModulusRow kModuli[] = {
    {2, 1, {1, 1}},
    {2, 2, {1, 1, 1}},
    {2, 3, {1, 1, 0, 1}},
    {2, 4, {1, 1, 0, 0, 1}},
    {2, 5, {1, 0, 1, 0, 0, 1}},
    {2, 6, {1, 1, 0, 1, 1, 0, 1}},
    {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
    {2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
    {3, 1, {1, 1}},
    {3, 2, {2, 2, 1}},
    {3, 3, {1, 2, 0, 1}},
    {3, 4, {2, 0, 0, 2, 1}},
    {3, 5, {1, 2, 0, 0, 0, 1}},
    {3, 6, {2, 2, 1, 0, 2, 0, 1}},
    {3, 7, {1, 0, 2, 0, 0, 0, 0, 1}},
    {3, 8, {2, 2, 2, 0, 1, 2, 0, 0, 1}},
    {5, 1, {3, 1}},
    {5, 2, {2, 4, 1}},
    {5, 3, {3, 3, 0, 1}},
    {5, 4, {2, 4, 4, 0, 1}},
    {5, 5, {3, 4, 0, 0, 0, 1}},
    {5, 6, {2, 0, 1, 4, 1, 0, 1}},
    {5, 7, {3, 3, 0, 0, 0, 0, 0, 1}},
    {5, 8, {2, 4, 3, 0, 1, 0, 0, 0, 1}},
    {7, 1, {4, 1}},
    {7, 2, {3, 6, 1}},
    {7, 3, {4, 0, 6, 1}},
    {7, 4, {3, 4, 5, 0, 1}},
    {7, 5, {4, 1, 0, 0, 0, 1}},
    {7, 6, {3, 6, 4, 5, 1, 0, 1}},
    {7, 7, {4, 6, 0, 0, 0, 0, 0, 1}},
    {7, 8, {3, 2, 6, 4, 0, 0, 0, 0, 1}},
};

const ModulusRow* find_modulus(unsigned p, unsigned r) {
    for (const auto& row : kModuli)
        if (row.p == p && row.r == r) return &row;
    return nullptr;
}

} // namespace

FieldCtx::FieldCtx(unsigned p, unsigned r) : p_(p), r_(r) {
    const ModulusRow* row = find_modulus(p, r);
    if (!row)
        throw schema_error("unsupported field GF(" + std::to_string(p) + "^" +
                           std::to_string(r) + "): p must be in {2,3,5,7} and 1 <= r <= 8");
    modulus_.assign(row->coeffs, row->coeffs + r + 1);

    std::uint64_t q = 1;
    for (unsigned i = 0; i < r; ++i) q *= p;
    q_ = static_cast<std::uint32_t>(q);

    // Build exp/log tables by repeated multiplication with the modulus root.
    // If the root did not have order exactly q-1 the walk would revisit an
    // element early; the collision check below therefore verifies both
    // irreducibility of the modulus and primitivity of its root.
    expt_.assign(q_ - 1, 0);
    logt_.assign(q_, 0);
    std::vector<bool> seen(q_, false);

    // x * elem, reduced by the monic modulus: shift the digits up one place
    // and fold the overflowing top digit back through -modulus.
    std::uint32_t top = 1;
    for (unsigned i = 0; i + 1 < r; ++i) top *= p;             // p^(r-1)
    std::vector<Fe> neg_mod_scaled(p, 0);                       // h * (-modulus mod x^r)
    for (unsigned h = 1; h < p; ++h) {
        Fe v = 0, scale = 1;
        for (unsigned i = 0; i < r; ++i) {
            unsigned d = (h * ((p - modulus_[i] % p) % p)) % p;
            v += d * scale;
            scale *= p;
        }
        neg_mod_scaled[h] = v;
    }
    auto mul_by_root = [&](Fe e) -> Fe {
        unsigned h = e / top;
        Fe shifted = (e % top) * p;
        return h == 0 ? shifted : add(shifted, neg_mod_scaled[h]);
    };

    Fe e = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
        if (e == 0 || seen[e])
            throw schema_error("bundled modulus failed the primitivity check for GF(" +
                               std::to_string(q_) + ")");
        seen[e] = true;
        expt_[i] = e;
        logt_[e] = i;
        e = mul_by_root(e);
    }
    if (e != 1)
        throw schema_error("bundled modulus failed the order check for GF(" +
                           std::to_string(q_) + ")");
}

std::optional<Fe> FieldCtx::subfield_embed(Fe a, unsigned s) const {
    if (s == 0 || r_ % s != 0)
        throw schema_error("subfield_embed: subfield degree must divide the field degree");
    check(a);
    FieldPtr sub = field_new(p_, s);
    if (a == 0) return Fe{0};
    if (s == r_) return a;
    std::uint32_t qs1 = sub->q() - 1;
    std::uint32_t step = (q_ - 1) / qs1;
    std::uint32_t l = logt_[a];
    if (l % step != 0) return std::nullopt;
    return sub->expt_[(l / step) % qs1];
}

Fe FieldCtx::lift_from_subfield(const FieldPtr& sub, Fe a) const {
    if (!sub || sub->p_ != p_ || r_ % sub->r_ != 0)
        throw schema_error("lift_from_subfield: not a subfield of this field");
    sub->check(a);
    if (a == 0) return 0;
    if (sub->r_ == r_) return a;
    std::uint32_t step = (q_ - 1) / (sub->q() - 1);
    return expt_[(static_cast<std::uint64_t>(sub->logt_[a]) * step) % (q_ - 1)];
}

std::string FieldCtx::to_string(Fe a) const {
    check(a);
    if (r_ == 1) return std::to_string(a);
    if (a == 0) return "0";
    std::uint32_t l = logt_[a];
    if (l == 0) return "1";
    if (l == 1) return "g";
    return "g^" + std::to_string(l);
}

SubfieldDecomposition::SubfieldDecomposition(FieldPtr big, unsigned s) : big_(std::move(big)), s_(s) {
    if (!big_ || s == 0 || big_->r() % s != 0)
        throw schema_error("subfield decomposition: subfield degree must divide the field degree");
    sub_ = field_new(big_->p(), s);
    const unsigned p = big_->p();
    const unsigned r = big_->r();
    e_ = r / s;

    basis_pow_.resize(e_);
    for (unsigned t = 0; t < e_; ++t) basis_pow_[t] = big_->pow(big_->generator(), t);

    // Basis-change matrix over GF(p): column (t*s + u) holds the p-ary digits
    // of g^t * lift(g_s^u). Invert it by Gauss-Jordan on [M | I].
    std::vector<unsigned> aug(r * 2 * r, 0);
    for (unsigned t = 0; t < e_; ++t)
        for (unsigned u = 0; u < s; ++u) {
            Fe sub_basis = sub_->pow(sub_->generator(), u);
            Fe el = big_->mul(basis_pow_[t], big_->lift_from_subfield(sub_, sub_basis));
            unsigned col = t * s + u;
            for (unsigned i = 0; i < r; ++i) aug[i * 2 * r + col] = big_->digit(el, i);
        }
    for (unsigned i = 0; i < r; ++i) aug[i * 2 * r + r + i] = 1;

    auto inv_mod_p = [p](unsigned a) {
        for (unsigned x = 1; x < p; ++x)
            if (a * x % p == 1) return x;
        throw schema_error("subfield decomposition: singular digit");
    };
    for (unsigned col = 0; col < r; ++col) {
        unsigned piv = col;
        while (piv < r && aug[piv * 2 * r + col] == 0) ++piv;
        if (piv == r) throw schema_error("subfield decomposition: basis-change matrix is singular");
        if (piv != col)
            for (unsigned j = 0; j < 2 * r; ++j) std::swap(aug[piv * 2 * r + j], aug[col * 2 * r + j]);
        unsigned inv = inv_mod_p(aug[col * 2 * r + col]);
        for (unsigned j = 0; j < 2 * r; ++j) aug[col * 2 * r + j] = aug[col * 2 * r + j] * inv % p;
        for (unsigned i = 0; i < r; ++i) {
            if (i == col) continue;
            unsigned c = aug[i * 2 * r + col];
            if (c == 0) continue;
            for (unsigned j = 0; j < 2 * r; ++j)
                aug[i * 2 * r + j] = (aug[i * 2 * r + j] + (p - c) * aug[col * 2 * r + j]) % p;
        }
    }
    minv_.resize(r * r);
    for (unsigned i = 0; i < r; ++i)
        for (unsigned j = 0; j < r; ++j) minv_[i * r + j] = aug[i * 2 * r + r + j];
}

std::vector<Fe> SubfieldDecomposition::coords(Fe x) const {
    const unsigned p = big_->p();
    const unsigned r = big_->r();
    big_->check(x);
    std::vector<unsigned> d(r);
    for (unsigned i = 0; i < r; ++i) d[i] = big_->digit(x, i);
    std::vector<Fe> out(e_, 0);
    for (unsigned t = 0; t < e_; ++t) {
        Fe packed = 0, scale = 1;
        for (unsigned u = 0; u < s_; ++u) {
            unsigned y = 0;
            const unsigned row = t * s_ + u;
            for (unsigned j = 0; j < r; ++j) y += minv_[row * r + j] * d[j];
            packed += (y % p) * scale;
            scale *= p;
        }
        out[t] = packed;
    }
    return out;
}

Fe SubfieldDecomposition::compose(const std::vector<Fe>& c) const {
    if (c.size() != e_) throw schema_error("subfield decomposition: wrong coordinate count");
    Fe acc = 0;
    for (unsigned t = 0; t < e_; ++t)
        acc = big_->add(acc, big_->mul(big_->lift_from_subfield(sub_, c[t]), basis_pow_[t]));
    return acc;
}

Fe SubfieldDecomposition::down(Fe x) const {
    std::vector<Fe> c = coords(x);
    for (unsigned t = 1; t < e_; ++t)
        if (c[t] != 0)
            throw schema_error("element does not lie in the requested subfield");
    return c[0];
}

FieldPtr field_new(unsigned p, unsigned r) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, r);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    FieldPtr ctx(new FieldCtx(p, r));
    cache.emplace(key, ctx);
    return ctx;
}

} // namespace stabkit
