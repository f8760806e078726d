#include "stabkit/evaluation.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "json.hpp"
#include "stabkit/errors.hpp"

namespace stabkit {

namespace {

constexpr std::uint64_t kMaxDomainPoints = std::uint64_t{1} << 20;

// enumerate the full exponent box lexicographically, first coordinate slowest
template <typename Fn>
void for_each_tuple(const std::vector<unsigned>& box, Fn&& fn) {
    ExponentTuple t(box.size(), 0);
    for (;;) {
        fn(t);
        std::size_t i = box.size();
        while (i > 0 && t[i - 1] + 1 == box[i - 1]) t[--i] = 0;
        if (i == 0) return;
        ++t[i - 1];
    }
}

// exact binomial coefficient C(x, m) for small m, 0 if x < m
std::uint64_t binom_small(std::int64_t x, unsigned m) {
    if (x < static_cast<std::int64_t>(m)) return 0;
    unsigned __int128 num = 1;
    for (unsigned i = 1; i <= m; ++i) {
        num = num * static_cast<unsigned __int128>(x - m + i) / i;
        if (num > (static_cast<unsigned __int128>(1) << 62))
            throw schema_error("binomial coefficient overflow in dimension formula");
    }
    return static_cast<std::uint64_t>(num);
}

} // namespace

DomainPtr grid_domain(FieldPtr ctx, unsigned m) {
    if (!ctx) throw schema_error("grid domain requires a field context");
    if (m < 1) throw schema_error("grid domain requires at least one variable");
    const unsigned q = ctx->q();
    std::uint64_t n = 1;
    for (unsigned i = 0; i < m; ++i) {
        n *= q;
        if (n > kMaxDomainPoints) throw budget_error("grid domain has too many points");
    }
    auto dom = std::shared_ptr<EvaluationDomain>(new EvaluationDomain());
    dom->ctx_ = ctx;
    dom->kind_ = DomainKind::Grid;
    dom->m_ = m;
    dom->box_.assign(m, q);
    const std::vector<Fe>& elems = ctx->element_order_list();
    dom->points_.reserve(n);
    for_each_tuple(dom->box_, [&](const ExponentTuple& idx) {
        std::vector<Fe> P(m);
        for (unsigned i = 0; i < m; ++i) P[i] = elems[idx[i]];
        dom->points_.push_back(std::move(P));
    });
    return dom;
}

DomainPtr torus_domain(FieldPtr ctx, std::vector<unsigned> orders) {
    if (!ctx) throw schema_error("torus domain requires a field context");
    if (orders.empty()) throw schema_error("torus domain requires at least one order");
    const unsigned q = ctx->q();
    std::uint64_t n = 1;
    for (unsigned N : orders) {
        if (N < 1 || (q - 1) % N != 0)
            throw schema_error("torus orders must divide q-1");
        n *= N;
        if (n > kMaxDomainPoints) throw budget_error("torus domain has too many points");
    }
    auto dom = std::shared_ptr<EvaluationDomain>(new EvaluationDomain());
    dom->ctx_ = ctx;
    dom->kind_ = DomainKind::Torus;
    dom->m_ = static_cast<unsigned>(orders.size());
    dom->box_ = std::move(orders);
    std::vector<Fe> roots(dom->m_);
    for (unsigned i = 0; i < dom->m_; ++i) roots[i] = ctx->element_of_order(dom->box_[i]);
    dom->points_.reserve(n);
    for_each_tuple(dom->box_, [&](const ExponentTuple& idx) {
        std::vector<Fe> P(dom->m_);
        for (unsigned i = 0; i < dom->m_; ++i) P[i] = ctx->pow(roots[i], idx[i]);
        dom->points_.push_back(std::move(P));
    });
    return dom;
}

bool same_domain(const EvaluationDomain& a, const EvaluationDomain& b) {
    return a.field().get() == b.field().get() && a.kind() == b.kind() && a.box() == b.box();
}

bool DefiningSet::operator==(const DefiningSet& o) const {
    if (!domain || !o.domain) return domain == o.domain && elements == o.elements;
    return same_domain(*domain, *o.domain) && elements == o.elements;
}

DefiningSet defining_set(DomainPtr domain, std::vector<ExponentTuple> elements) {
    if (!domain) throw schema_error("defining set requires a domain");
    for (const auto& t : elements) {
        if (t.size() != domain->num_vars())
            throw schema_error("exponent tuple arity does not match the domain");
        for (unsigned i = 0; i < t.size(); ++i)
            if (t[i] >= domain->box()[i])
                throw schema_error("exponent out of the domain's box");
    }
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    return DefiningSet{std::move(domain), std::move(elements)};
}

unsigned reduce_grid_exponent(std::uint64_t e, unsigned q) {
    if (q < 2) throw schema_error("grid exponent reduction requires q >= 2");
    if (e < q) return static_cast<unsigned>(e);
    return static_cast<unsigned>((e - 1) % (q - 1) + 1);
}

LinearCode evaluate(const DefiningSet& ds) {
    if (!ds.domain) throw schema_error("defining set has no domain");
    if (ds.elements.empty()) throw schema_error("cannot evaluate an empty defining set");
    const EvaluationDomain& dom = *ds.domain;
    const FieldCtx& F = *dom.field();
    const auto& pts = dom.points();
    std::vector<std::vector<Fe>> rows;
    rows.reserve(ds.elements.size());
    for (const auto& alpha : ds.elements) {
        std::vector<Fe> row(pts.size());
        for (std::size_t j = 0; j < pts.size(); ++j) {
            Fe v = F.one();
            for (unsigned i = 0; i < dom.num_vars(); ++i)
                v = F.mul(v, F.pow(pts[j][i], alpha[i]));
            row[j] = v;
        }
        rows.push_back(std::move(row));
    }
    return LinearCode(dom.field(), pts.size(), std::move(rows));
}

DefiningSet rm_defining_set(int r, unsigned m, FieldPtr ctx) {
    if (!ctx) throw schema_error("defining set requires a field context");
    const unsigned q = ctx->q();
    if (m < 1) throw schema_error("at least one variable required");
    if (r < 0 || static_cast<std::int64_t>(r) > static_cast<std::int64_t>(m) * (q - 1))
        throw schema_error("order out of range [0, m(q-1)]");
    DomainPtr dom = grid_domain(std::move(ctx), m);
    std::vector<ExponentTuple> elems;
    for_each_tuple(dom->box(), [&](const ExponentTuple& t) {
        std::uint64_t deg = 0;
        for (unsigned a : t) deg += a;
        if (deg <= static_cast<std::uint64_t>(r)) elems.push_back(t);
    });
    return defining_set(std::move(dom), std::move(elems));
}

std::int64_t rm_dimension(int r, unsigned m, unsigned q) {
    if (m < 1 || q < 2) throw schema_error("invalid parameters");
    if (r < 0 || static_cast<std::int64_t>(r) >= static_cast<std::int64_t>(m) * (q - 1))
        throw schema_error("order out of range [0, m(q-1))");
    std::int64_t acc = 0;
    for (unsigned j = 0; j <= m; ++j) {
        std::int64_t x = static_cast<std::int64_t>(m) + r - static_cast<std::int64_t>(j) * q;
        std::int64_t term = static_cast<std::int64_t>(binom_small(m, j)) *
                            static_cast<std::int64_t>(binom_small(x, m));
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

std::int64_t rm_distance(int r, unsigned m, unsigned q) {
    if (m < 1 || q < 2) throw schema_error("invalid parameters");
    if (r < 0 || static_cast<std::int64_t>(r) >= static_cast<std::int64_t>(m) * (q - 1))
        throw schema_error("order out of range [0, m(q-1))");
    std::int64_t rest = static_cast<std::int64_t>(m) * (q - 1) - r;
    std::int64_t a = rest / (q - 1);
    std::int64_t b = rest % (q - 1);
    std::int64_t d = b + 1;
    for (std::int64_t i = 0; i < a; ++i) {
        d *= q;
        if (d > (std::int64_t{1} << 60)) throw schema_error("distance overflow");
    }
    return d;
}

int rm_dual_order(int r, unsigned m, unsigned q) {
    if (m < 1 || q < 2) throw schema_error("invalid parameters");
    if (r < 0 || static_cast<std::int64_t>(r) >= static_cast<std::int64_t>(m) * (q - 1))
        throw schema_error("order out of range [0, m(q-1))");
    return static_cast<int>(static_cast<std::int64_t>(m) * (q - 1) - (r + 1));
}

LinearCode rm_code(int r, unsigned m, FieldPtr ctx) {
    const unsigned q = ctx->q();
    DefiningSet ds = rm_defining_set(r, m, ctx);
    LinearCode C = evaluate(ds);
    const bool full = static_cast<std::int64_t>(r) == static_cast<std::int64_t>(m) * (q - 1);
    std::int64_t d = full ? 1 : rm_distance(r, m, q);
    return C.with_designed_distance(static_cast<int>(d), "Reed-Muller minimum distance", true);
}

std::uint64_t n_alpha(const ExponentTuple& alpha, unsigned q) {
    if (q < 2) throw schema_error("invalid field size");
    std::uint64_t qm = 1, prod = 1;
    for (unsigned a : alpha) {
        if (a >= q) throw schema_error("exponent out of the grid box");
        qm *= q;
        prod *= q - a;
    }
    return qm - prod;
}

std::uint64_t normalize_t(std::uint64_t s, unsigned m, unsigned q) {
    if (m < 1 || q < 2) throw schema_error("invalid parameters");
    std::uint64_t qm = 1;
    for (unsigned i = 0; i < m; ++i) qm *= q;
    if (s > qm) throw schema_error("hyperbolic parameter exceeds the point count");
    // achievable values are q^m - prod(q - alpha_i); collect products of
    // m factors drawn from {1..q}
    std::set<std::uint64_t> achievable;
    std::vector<unsigned> box(m, q);
    for_each_tuple(box, [&](const ExponentTuple& t) {
        std::uint64_t prod = 1;
        for (unsigned a : t) prod *= q - a;
        achievable.insert(qm - prod);
    });
    auto it = achievable.lower_bound(s);
    if (it == achievable.end()) return *achievable.rbegin(); // s = q^m: same code as q^m - 1
    return *it;
}

std::pair<DefiningSet, DefiningSet> hyp_defining_sets(std::uint64_t t, unsigned m, FieldPtr ctx) {
    if (!ctx) throw schema_error("defining set requires a field context");
    const unsigned q = ctx->q();
    std::uint64_t qm = 1;
    for (unsigned i = 0; i < m; ++i) qm *= q;
    if (t > qm) throw schema_error("hyperbolic parameter exceeds the point count");
    t = normalize_t(t, m, q);
    const std::uint64_t W = qm - t;
    DomainPtr dom = grid_domain(std::move(ctx), m);
    std::vector<ExponentTuple> xi, hyp;
    for_each_tuple(dom->box(), [&](const ExponentTuple& a) {
        std::uint64_t up = 1, down = 1;
        for (unsigned ai : a) {
            up *= ai + 1;
            down *= q - ai;
        }
        if (up < W) xi.push_back(a);
        if (down >= W) hyp.push_back(a);
    });
    return {defining_set(dom, std::move(xi)), defining_set(dom, std::move(hyp))};
}

std::uint64_t hyp_self_orthogonal_threshold(unsigned m, unsigned q) {
    if (m < 1 || q < 2) throw schema_error("invalid parameters");
    std::uint64_t qm = 1;
    for (unsigned i = 0; i < m; ++i) qm *= q;
    std::uint64_t half = 1;
    for (unsigned i = 0; i < m / 2; ++i) half *= q;
    if (m % 2 == 0) return qm - half;            // q^m - q^{m/2}
    if (q % 2 == 1) return qm - half * (q + 1) / 2; // q^m - q^{(m-1)/2} (q+1)/2
    return qm - half * (q / 2 + 1);              // q^m - q^{(m-1)/2} (q/2 + 1)
}

LinearCode hyperbolic_code(std::uint64_t t, unsigned m, FieldPtr ctx) {
    const unsigned q = ctx->q();
    std::uint64_t qm = 1;
    for (unsigned i = 0; i < m; ++i) qm *= q;
    const std::uint64_t tn = normalize_t(t, m, q);
    auto [xi, hyp] = hyp_defining_sets(tn, m, ctx);
    LinearCode C = evaluate(hyp);
    return C.with_designed_distance(static_cast<int>(qm - tn), "hyperbolic minimum distance", true);
}

DefiningSet delta_perp(const DefiningSet& ds) {
    if (!ds.domain) throw schema_error("defining set has no domain");
    if (ds.domain->kind() != DomainKind::Torus)
        throw schema_error("monomial duality requires a torus domain");
    const auto& N = ds.domain->orders();
    std::set<ExponentTuple> negated;
    for (const auto& a : ds.elements) {
        ExponentTuple hat(a.size());
        for (unsigned i = 0; i < a.size(); ++i) hat[i] = (N[i] - a[i]) % N[i];
        negated.insert(std::move(hat));
    }
    std::vector<ExponentTuple> rest;
    for_each_tuple(N, [&](const ExponentTuple& t) {
        if (!negated.count(t)) rest.push_back(t);
    });
    return defining_set(ds.domain, std::move(rest));
}

std::string defining_set_to_json(const DefiningSet& ds, unsigned s) {
    if (!ds.domain) throw schema_error("defining set has no domain");
    nlohmann::json j;
    j["p"] = ds.domain->field()->p();
    j["r"] = ds.domain->field()->r();
    j["s"] = s;
    if (ds.domain->kind() == DomainKind::Torus) {
        j["kind"] = "torus";
        j["N"] = ds.domain->orders();
    } else {
        j["kind"] = "grid";
        j["m"] = ds.domain->num_vars();
    }
    nlohmann::json delta = nlohmann::json::array();
    for (const auto& t : ds.elements) delta.push_back(t);
    j["delta"] = std::move(delta);
    return j.dump();
}

ParsedDefiningSet defining_set_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw schema_error(std::string("invalid defining-set JSON: ") + e.what());
    }
    try {
        const unsigned p = j.at("p").get<unsigned>();
        const unsigned r = j.at("r").get<unsigned>();
        const unsigned s = j.contains("s") ? j.at("s").get<unsigned>() : r;
        FieldPtr ctx = field_new(p, r);
        DomainPtr dom;
        std::string kind = j.contains("kind") ? j.at("kind").get<std::string>()
                                              : (j.contains("N") ? "torus" : "grid");
        if (kind == "torus") {
            dom = torus_domain(ctx, j.at("N").get<std::vector<unsigned>>());
        } else if (kind == "grid") {
            dom = grid_domain(ctx, j.at("m").get<unsigned>());
        } else {
            throw schema_error("unknown domain kind: " + kind);
        }
        std::vector<ExponentTuple> elems;
        for (const auto& item : j.at("delta")) {
            std::vector<std::uint64_t> raw;
            if (item.is_number_integer())
                raw.push_back(item.get<std::uint64_t>());
            else
                raw = item.get<std::vector<std::uint64_t>>();
            if (raw.size() != dom->num_vars())
                throw schema_error("exponent tuple arity does not match the domain");
            ExponentTuple t(raw.size());
            for (unsigned i = 0; i < raw.size(); ++i) {
                if (dom->kind() == DomainKind::Torus)
                    t[i] = static_cast<unsigned>(raw[i] % dom->orders()[i]);
                else
                    t[i] = reduce_grid_exponent(raw[i], ctx->q());
            }
            elems.push_back(std::move(t));
        }
        return ParsedDefiningSet{defining_set(std::move(dom), std::move(elems)), s};
    } catch (const nlohmann::json::exception& e) {
        throw schema_error(std::string("invalid defining-set JSON: ") + e.what());
    }
}

} // namespace stabkit
