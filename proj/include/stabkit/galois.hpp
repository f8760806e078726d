#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stabkit/errors.hpp"

namespace stabkit {

// A field element, stored as its dense base-p index: the residue class
// c_0 + c_1 x + ... + c_{r-1} x^{r-1} is stored as the integer
// c_0 + c_1 p + ... + c_{r-1} p^{r-1}, so 0 is the zero element and 1 is one.
// Elements are only meaningful relative to the FieldCtx that produced them.
using Fe = std::uint32_t;

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

// Shared arithmetic context for GF(p^r), p in {2,3,5,7}, 1 <= r <= 8.
// Contexts are cached: field_new(p, r) always returns the same object, so
// pointer equality identifies the field. Everything is immutable after
// construction.
FieldPtr field_new(unsigned p, unsigned r);

class FieldCtx {
public:
    unsigned p() const noexcept { return p_; }
    unsigned r() const noexcept { return r_; }
    std::uint32_t q() const noexcept { return q_; }

    // Modulus coefficients, constant term first, length r+1, monic.
    const std::vector<unsigned>& modulus() const noexcept { return modulus_; }

    // The root of the bundled modulus generates the multiplicative group;
    // construction verifies this, which certifies at once that the modulus is
    // irreducible and that the root is primitive.
    Fe generator() const noexcept { return q_ == 2 ? Fe{1} : expt_[1]; }

    Fe zero() const noexcept { return 0; }
    Fe one() const noexcept { return 1; }

    // g^i for 0 <= i < q-1.
    Fe exp(std::uint32_t i) const noexcept { return expt_[i % (q_ - 1)]; }
    // discrete log base g of a nonzero element.
    std::uint32_t log(Fe a) const {
        check(a);
        if (a == 0) throw schema_error("log of zero is undefined");
        return logt_[a];
    }

    Fe add(Fe a, Fe b) const {
        check(a);
        check(b);
        if (p_ == 2) return a ^ b;
        Fe out = 0, scale = 1;
        while (a || b) {
            unsigned s = a % p_ + b % p_;
            if (s >= p_) s -= p_;
            out += s * scale;
            a /= p_;
            b /= p_;
            scale *= p_;
        }
        return out;
    }

    Fe neg(Fe a) const {
        check(a);
        if (p_ == 2) return a;
        Fe out = 0, scale = 1;
        while (a) {
            unsigned d = a % p_;
            out += (d ? p_ - d : 0) * scale;
            a /= p_;
            scale *= p_;
        }
        return out;
    }

    Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }

    Fe mul(Fe a, Fe b) const {
        check(a);
        check(b);
        if (a == 0 || b == 0) return 0;
        std::uint32_t s = logt_[a] + logt_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return expt_[s];
    }

    Fe inv(Fe a) const {
        check(a);
        if (a == 0) throw schema_error("inverse of zero is undefined");
        std::uint32_t l = logt_[a];
        return expt_[l == 0 ? 0 : q_ - 1 - l];
    }

    Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }

    // a^e with the usual conventions pow(0,0) = 1, pow(0,e>0) = 0.
    Fe pow(Fe a, std::uint64_t e) const {
        check(a);
        if (a == 0) return e == 0 ? 1 : 0;
        std::uint64_t l = logt_[a];
        return expt_[(l * (e % (q_ - 1))) % (q_ - 1)];
    }

    // a^(p^s), the s-fold Frobenius.
    Fe frobenius(Fe a, unsigned s = 1) const {
        std::uint64_t e = 1;
        for (unsigned i = 0; i < s; ++i) e *= p_;
        return pow(a, e);
    }

    // Trace onto the subfield GF(p^s): a + a^(p^s) + ... + a^(p^(s(r/s-1))).
    // The result is an element of this field lying in the subfield
    // (it satisfies x^(p^s) = x).
    Fe trace(Fe a, unsigned s) const {
        if (s == 0 || r_ % s != 0)
            throw schema_error("trace: subfield degree must divide the field degree");
        std::uint64_t ps = 1;
        for (unsigned i = 0; i < s; ++i) ps *= p_;
        Fe acc = a, cur = a;
        for (unsigned j = 1; j < r_ / s; ++j) {
            cur = pow(cur, ps);
            acc = add(acc, cur);
        }
        return acc;
    }

    // An element of multiplicative order exactly N; requires N | q-1.
    Fe element_of_order(std::uint32_t N) const {
        if (N == 0 || (q_ - 1) % N != 0)
            throw schema_error("element_of_order: order must divide q-1");
        return expt_[((q_ - 1) / N) % (q_ - 1)];
    }

    // True iff a lies in the subfield GF(p^s) (requires s | r).
    bool subfield_test(Fe a, unsigned s) const {
        if (s == 0 || r_ % s != 0)
            throw schema_error("subfield_test: subfield degree must divide the field degree");
        std::uint64_t ps = 1;
        for (unsigned i = 0; i < s; ++i) ps *= p_;
        return pow(a, ps) == a;
    }

    // Re-expresses a as an element of the GF(p^s) context if it lies in that
    // subfield, otherwise empty. The map g ^ ((q-1)/(p^s-1)) -> g_sub is a
    // field isomorphism because the bundled moduli are norm-compatible.
    std::optional<Fe> subfield_embed(Fe a, unsigned s) const;

    // Inverse of subfield_embed: carries an element of the subfield context
    // `sub` into this field.
    Fe lift_from_subfield(const FieldPtr& sub, Fe a) const;

    // All q elements ordered 0, 1, g, g^2, ..., g^(q-2); fixes evaluation
    // point order for full-grid codes.
    std::vector<Fe> element_order_list() const {
        std::vector<Fe> out;
        out.reserve(q_);
        out.push_back(0);
        for (std::uint32_t i = 0; i + 1 < q_; ++i) out.push_back(expt_[i]);
        return out;
    }

    unsigned digit(Fe a, unsigned i) const {
        check(a);
        for (unsigned j = 0; j < i; ++j) a /= p_;
        return a % p_;
    }

    std::string to_string(Fe a) const;

    // Guards against elements from a different (larger) field leaking in.
    void check(Fe a) const {
        if (a >= q_)
            throw schema_error("field element " + std::to_string(a) +
                               " out of range for GF(" + std::to_string(q_) +
                               ") — element from another field context?");
    }

private:
    friend FieldPtr field_new(unsigned, unsigned);
    FieldCtx(unsigned p, unsigned r);

    unsigned p_ = 0;
    unsigned r_ = 0;
    std::uint32_t q_ = 0;
    std::vector<unsigned> modulus_;
    std::vector<Fe> expt_;          // size q-1
    std::vector<std::uint32_t> logt_; // size q; logt_[0] unused
};

// View of GF(p^r) as an e = r/s dimensional vector space over GF(p^s), with
// basis {1, g, ..., g^(e-1)} (g the ambient generator). Coordinates are
// elements of the GF(p^s) context.
class SubfieldDecomposition {
public:
    SubfieldDecomposition(FieldPtr big, unsigned s);

    const FieldPtr& big() const noexcept { return big_; }
    const FieldPtr& sub() const noexcept { return sub_; }
    unsigned e() const noexcept { return e_; }

    // Coordinates of x in the basis {g^t}, length e, entries in sub().
    std::vector<Fe> coords(Fe x) const;

    // Rebuild x from its coordinates.
    Fe compose(const std::vector<Fe>& c) const;

    // Re-expression of a subfield-rational element in the GF(p^s) context;
    // throws if x does not lie in the subfield.
    Fe down(Fe x) const;

private:
    FieldPtr big_;
    FieldPtr sub_;
    unsigned s_ = 0;
    unsigned e_ = 0;
    // inverse of the GF(p)-basis-change matrix, row-major r x r over GF(p)
    std::vector<unsigned> minv_;
    std::vector<Fe> basis_pow_; // g^t for t < e, in the big field
};

} // namespace stabkit
