#include "stabkit/subfield.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "stabkit/errors.hpp"

namespace stabkit {

namespace {

// componentwise orbit step for a torus box
ExponentTuple torus_step(const ExponentTuple& a, const std::vector<unsigned>& N,
                         std::uint64_t mult) {
    ExponentTuple out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = static_cast<unsigned>((a[i] * mult) % N[i]);
    return out;
}

// grid orbit step: exponent 0 is fixed; {1..q-1} multiplies mod q-1 with
// residue 0 standing for q-1
ExponentTuple grid_step(const ExponentTuple& a, unsigned q, std::uint64_t mult) {
    ExponentTuple out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            out[i] = 0;
        } else {
            std::uint64_t e = (static_cast<std::uint64_t>(a[i]) * mult - 1) % (q - 1) + 1;
            out[i] = static_cast<unsigned>(e);
        }
    }
    return out;
}

template <typename Step>
CosetPartition partition_box(const std::vector<unsigned>& box, Step&& step) {
    CosetPartition part;
    std::set<ExponentTuple> seen;
    ExponentTuple t(box.size(), 0);
    std::vector<ExponentTuple> order;
    for (;;) {
        order.push_back(t);
        std::size_t i = box.size();
        while (i > 0 && t[i - 1] + 1 == box[i - 1]) t[--i] = 0;
        if (i == 0) break;
        ++t[i - 1];
    }
    for (const auto& start : order) {
        if (seen.count(start)) continue;
        // collect the orbit, then rotate so the lex-smallest element leads
        std::vector<ExponentTuple> orbit{start};
        for (ExponentTuple cur = step(start);; cur = step(cur)) {
            if (cur == start) break;
            orbit.push_back(cur);
        }
        auto mn = std::min_element(orbit.begin(), orbit.end());
        std::rotate(orbit.begin(), mn, orbit.end());
        CyclotomicCoset c;
        c.rep = orbit.front();
        c.elements = std::move(orbit);
        for (const auto& e : c.elements) seen.insert(e);
        part.cosets.push_back(std::move(c));
    }
    std::sort(part.cosets.begin(), part.cosets.end(),
              [](const CyclotomicCoset& a, const CyclotomicCoset& b) { return a.rep < b.rep; });
    for (std::size_t i = 0; i < part.cosets.size(); ++i)
        for (const auto& e : part.cosets[i].elements) part.index[e] = i;
    return part;
}

std::uint64_t power_u64(std::uint64_t base, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

struct DeltaContext {
    CosetPartition part;
    std::set<ExponentTuple> delta;
};

DeltaContext prepare_delta(const DefiningSet& ds, unsigned s, bool close_orbits) {
    if (!ds.domain) throw schema_error("defining set has no domain");
    const FieldCtx& F = *ds.domain->field();
    if (s < 1 || F.r() % s != 0)
        throw schema_error("subfield exponent must divide the field degree");
    DeltaContext out;
    out.part = domain_cosets(*ds.domain, s);
    out.delta.insert(ds.elements.begin(), ds.elements.end());
    // closure check: every member's full orbit must be present
    bool closed = true;
    for (const auto& e : ds.elements) {
        const auto& orbit = out.part.cosets[out.part.index.at(e)].elements;
        for (const auto& o : orbit)
            if (!out.delta.count(o)) closed = false;
    }
    if (!closed) {
        if (!close_orbits)
            throw schema_error("defining set is not closed under the p^s orbit rule "
                               "(pass close_orbits to close it)");
        for (const auto& e : ds.elements) {
            const auto& orbit = out.part.cosets[out.part.index.at(e)].elements;
            out.delta.insert(orbit.begin(), orbit.end());
        }
    }
    return out;
}

// rows over GF(p^s) obtained by evaluating the trace basis of every coset
// selected by `pick`, mapped into the subfield context
std::vector<std::vector<Fe>> trace_rows(const DefiningSet& ds, const CosetPartition& part,
                                        unsigned s, const std::set<std::size_t>& pick) {
    const FieldPtr& big = ds.domain->field();
    FieldPtr sub = field_new(big->p(), s);
    std::vector<std::vector<Fe>> rows;
    for (std::size_t ci : pick) {
        for (const TracePolynomial& tp : trace_basis(part.cosets[ci], big, s)) {
            std::vector<Fe> ambient = evaluate_trace_polynomial(tp, *ds.domain, s);
            std::vector<Fe> down(ambient.size());
            for (std::size_t j = 0; j < ambient.size(); ++j) {
                auto v = big->subfield_embed(ambient[j], s);
                if (!v) throw precondition_error("trace evaluation escaped the subfield");
                down[j] = *v;
            }
            rows.push_back(std::move(down));
        }
    }
    return rows;
}

ExponentTuple negate_mod(const ExponentTuple& a, const std::vector<unsigned>& N) {
    ExponentTuple out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (N[i] - a[i]) % N[i];
    return out;
}

} // namespace

CosetPartition cosets(const std::vector<unsigned>& N, unsigned p, unsigned s) {
    if (N.empty()) throw schema_error("at least one modulus required");
    if (p < 2 || s < 1) throw schema_error("invalid multiplier parameters");
    for (unsigned Ni : N) {
        if (Ni < 1) throw schema_error("moduli must be positive");
        if (gcd_u64(p, Ni) != 1)
            throw schema_error("multiplication by p is not invertible modulo the order");
    }
    std::uint64_t mult = 1;
    for (unsigned i = 0; i < s; ++i) mult *= p;
    return partition_box(N, [&](const ExponentTuple& a) { return torus_step(a, N, mult); });
}

CosetPartition domain_cosets(const EvaluationDomain& dom, unsigned s) {
    const unsigned p = dom.field()->p();
    if (dom.kind() == DomainKind::Torus) return cosets(dom.orders(), p, s);
    const unsigned q = dom.field()->q();
    const std::uint64_t mult = power_u64(p, s);
    std::vector<unsigned> box(dom.num_vars(), q);
    return partition_box(box, [&](const ExponentTuple& a) { return grid_step(a, q, mult); });
}

std::vector<TracePolynomial> trace_basis(const CyclotomicCoset& coset, const FieldPtr& ctx,
                                         unsigned s) {
    if (!ctx) throw schema_error("trace basis requires a field context");
    if (s < 1 || ctx->r() % s != 0)
        throw schema_error("subfield exponent must divide the field degree");
    const unsigned terms = static_cast<unsigned>(coset.size());
    const std::uint64_t sub_order = power_u64(ctx->p(), s * terms) - 1;
    if ((static_cast<std::uint64_t>(ctx->q()) - 1) % sub_order != 0)
        throw schema_error("coset field does not embed in the ambient field");
    const Fe beta = ctx->exp(static_cast<std::uint64_t>(ctx->q() - 1) / sub_order % (ctx->q() - 1));
    std::vector<TracePolynomial> out;
    out.reserve(terms);
    for (unsigned l = 0; l < terms; ++l)
        out.push_back(TracePolynomial{coset.rep, ctx->pow(beta, l), terms});
    return out;
}

std::vector<Fe> evaluate_trace_polynomial(const TracePolynomial& tp, const EvaluationDomain& dom,
                                          unsigned s) {
    const FieldCtx& F = *dom.field();
    const auto& pts = dom.points();
    std::vector<Fe> out(pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) {
        Fe x = F.one();
        for (unsigned i = 0; i < dom.num_vars(); ++i) x = F.mul(x, F.pow(pts[j][i], tp.exponent[i]));
        Fe y = F.mul(tp.scale, x);
        Fe acc = 0;
        for (unsigned t = 0; t < tp.terms; ++t) {
            acc = F.add(acc, y);
            y = F.frobenius(y, s);
        }
        out[j] = acc;
    }
    return out;
}

DefiningSet close_under_frobenius(const DefiningSet& ds, unsigned s) {
    if (!ds.domain) throw schema_error("defining set has no domain");
    CosetPartition part = domain_cosets(*ds.domain, s);
    std::set<ExponentTuple> all;
    for (const auto& e : ds.elements) {
        const auto& orbit = part.cosets[part.index.at(e)].elements;
        all.insert(orbit.begin(), orbit.end());
    }
    return defining_set(ds.domain, {all.begin(), all.end()});
}

LinearCode subfield_code_from_delta(const DefiningSet& ds, unsigned s, bool close_orbits) {
    DeltaContext ctx = prepare_delta(ds, s, close_orbits);
    std::set<std::size_t> pick;
    for (std::size_t ci = 0; ci < ctx.part.cosets.size(); ++ci) {
        const auto& elems = ctx.part.cosets[ci].elements;
        if (std::all_of(elems.begin(), elems.end(),
                        [&](const ExponentTuple& e) { return ctx.delta.count(e) > 0; }))
            pick.insert(ci);
    }
    FieldPtr sub = field_new(ds.domain->field()->p(), s);
    auto rows = trace_rows(ds, ctx.part, s, pick);
    return LinearCode(std::move(sub), ds.domain->num_points(), std::move(rows));
}

LinearCode dual_subfield_code(const DefiningSet& ds, unsigned s, bool close_orbits) {
    DeltaContext ctx = prepare_delta(ds, s, close_orbits);
    if (ds.domain->kind() == DomainKind::Grid)
        return dual(subfield_code_from_delta(ds, s, close_orbits));
    const auto& N = ds.domain->orders();
    // a coset meets the complement-of-negated set iff some member's negation
    // lies outside the (closed) set
    std::set<std::size_t> pick;
    for (std::size_t ci = 0; ci < ctx.part.cosets.size(); ++ci)
        for (const auto& e : ctx.part.cosets[ci].elements)
            if (!ctx.delta.count(negate_mod(e, N))) {
                pick.insert(ci);
                break;
            }
    FieldPtr sub = field_new(ds.domain->field()->p(), s);
    auto rows = trace_rows(ds, ctx.part, s, pick);
    return LinearCode(std::move(sub), ds.domain->num_points(), std::move(rows));
}

bool css_containment(const DefiningSet& ds, unsigned s, bool close_orbits) {
    DeltaContext ctx = prepare_delta(ds, s, close_orbits);
    if (ds.domain->kind() == DomainKind::Grid) {
        LinearCode E = subfield_code_from_delta(ds, s, close_orbits);
        if (E.dimension() == 0) return true;
        return contains(dual(E), E);
    }
    const auto& N = ds.domain->orders();
    // every coset inside the set must contain a member whose negation is
    // outside the set
    for (std::size_t ci = 0; ci < ctx.part.cosets.size(); ++ci) {
        const auto& elems = ctx.part.cosets[ci].elements;
        if (!std::all_of(elems.begin(), elems.end(),
                         [&](const ExponentTuple& e) { return ctx.delta.count(e) > 0; }))
            continue;
        bool meets = false;
        for (const auto& e : elems)
            if (!ctx.delta.count(negate_mod(e, N))) {
                meets = true;
                break;
            }
        if (!meets) return false;
    }
    return true;
}

} // namespace stabkit
