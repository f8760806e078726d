#include "stabkit/recipe.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "stabkit/errors.hpp"
#include "stabkit/evaluation.hpp"
#include "stabkit/galois.hpp"
#include "stabkit/subfield.hpp"

namespace stabkit {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// small JSON helpers (all failures are schema errors)
// ---------------------------------------------------------------------------

[[noreturn]] void bad(const std::string& msg) { throw schema_error("recipe: " + msg); }

const json& require_key(const json& node, const char* key, const char* kind) {
    auto it = node.find(key);
    if (it == node.end()) bad(std::string(kind) + " recipe is missing \"" + key + "\"");
    return *it;
}

std::uint64_t as_u64(const json& v, const char* what) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) {
        auto s = v.get<std::int64_t>();
        if (s >= 0) return static_cast<std::uint64_t>(s);
    }
    bad(std::string(what) + " must be a non-negative integer");
}

std::uint64_t get_u64(const json& node, const char* key, const char* kind) {
    return as_u64(require_key(node, key, kind), key);
}

std::string get_string(const json& node, const char* key, const char* kind) {
    const json& v = require_key(node, key, kind);
    if (!v.is_string()) bad(std::string("\"") + key + "\" must be a string");
    return v.get<std::string>();
}

void check_keys(const json& node, const char* kind, std::initializer_list<const char*> allowed) {
    for (const auto& item : node.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (item.key() == a) {
                ok = true;
                break;
            }
        if (!ok) bad("unknown key \"" + item.key() + "\" in " + kind + " recipe");
    }
}

bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Factor a prime power q = p^e; anything else is a schema error.
std::pair<unsigned, unsigned> prime_power(std::uint64_t q) {
    if (q < 2) bad("field size must be at least 2");
    unsigned p = 0;
    for (unsigned d = 2; static_cast<std::uint64_t>(d) * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) return {static_cast<unsigned>(q), 1};
    unsigned e = 0;
    std::uint64_t v = q;
    while (v % p == 0) {
        v /= p;
        ++e;
    }
    if (v != 1) bad("field size " + std::to_string(q) + " is not a prime power");
    return {p, e};
}

// ---------------------------------------------------------------------------

const std::set<std::string> kClassicalKinds = {"rm", "hyperbolic", "affine", "subfield",
                                               "matprod"};
const std::set<std::string> kQuantumKinds = {"css", "steane", "extend", "subcode", "gv-check"};

class Runner {
public:
    Runner(const json* defs, RecipeOptions opts) : defs_(defs), opts_(opts) {}

    LinearCode build_classical(const json& node);
    QuantumParams build_quantum(const json& node);
    std::optional<bool> gv_flag() const { return gv_flag_; }

private:
    const json& def_named(const std::string& name) {
        if (!defs_ || !defs_->is_object() || !defs_->contains(name))
            bad("reference \"" + name + "\" does not resolve to any definition");
        return defs_->at(name);
    }

    // Follow a chain of {"ref": ...} nodes to the defining node.
    const json& resolve(const json& node) {
        const json* cur = &node;
        std::set<std::string> seen;
        while (true) {
            if (!cur->is_object()) bad("a recipe must be a JSON object");
            if (!cur->contains("ref")) return *cur;
            check_keys(*cur, "reference", {"ref"});
            const json& rv = cur->at("ref");
            if (!rv.is_string()) bad("\"ref\" must be a string");
            std::string name = rv.get<std::string>();
            if (!seen.insert(name).second)
                bad("cyclic reference through \"" + name + "\"");
            cur = &def_named(name);
        }
    }

    std::string peek_kind(const json& node) {
        const json& target = resolve(node);
        if (!target.contains("kind")) bad("recipe needs a \"kind\" or a \"ref\"");
        const json& kv = target.at("kind");
        if (!kv.is_string()) bad("\"kind\" must be a string");
        return kv.get<std::string>();
    }

    DomainPtr make_domain(const json& node, const FieldPtr& ctx, const char* kind);
    std::vector<ExponentTuple> parse_delta(const json& node, const EvaluationDomain& dom);
    LinearCode apply_designed(LinearCode c, const json& node);
    MPMatrix make_matrix(const json& node);
    std::pair<std::vector<LinearCode>, MPMatrix> mp_parts(const json& mp_node);

    LinearCode build_rm(const json& node);
    LinearCode build_hyperbolic(const json& node);
    LinearCode build_affine(const json& node);
    LinearCode build_subfield(const json& node);
    LinearCode build_matprod(const json& node);

    const json* defs_ = nullptr;
    RecipeOptions opts_;
    std::set<std::string> visiting_;
    std::map<std::string, LinearCode> classical_cache_;
    std::map<std::string, QuantumParams> quantum_cache_;
    std::optional<bool> gv_flag_;
};

DomainPtr Runner::make_domain(const json& node, const FieldPtr& ctx, const char* kind) {
    std::string d = get_string(node, "domain", kind);
    if (d == "grid") {
        if (node.contains("orders")) bad("grid domains take \"m\", not \"orders\"");
        auto m = get_u64(node, "m", kind);
        if (m == 0 || m > 16) bad("\"m\" must be between 1 and 16");
        return grid_domain(ctx, static_cast<unsigned>(m));
    }
    if (d == "torus") {
        if (node.contains("m")) bad("torus domains take \"orders\", not \"m\"");
        const json& ov = require_key(node, "orders", kind);
        if (!ov.is_array() || ov.empty()) bad("\"orders\" must be a non-empty array");
        std::vector<unsigned> orders;
        for (const json& o : ov) {
            auto N = as_u64(o, "torus order");
            if (N == 0 || N > ctx->q() - 1) bad("torus orders must lie in [1, q-1]");
            orders.push_back(static_cast<unsigned>(N));
        }
        return torus_domain(ctx, orders);
    }
    bad("\"domain\" must be \"grid\" or \"torus\"");
}

std::vector<ExponentTuple> Runner::parse_delta(const json& node, const EvaluationDomain& dom) {
    const json& arr = require_key(node, "delta", "defining-set");
    if (!arr.is_array()) bad("\"delta\" must be an array");
    const unsigned m = dom.num_vars();
    const unsigned q = dom.field()->q();
    std::vector<ExponentTuple> out;
    out.reserve(arr.size());
    for (const json& el : arr) {
        ExponentTuple t;
        if (el.is_number()) {
            if (m != 1) bad("bare integers in \"delta\" need a one-dimensional domain");
            t.push_back(static_cast<unsigned>(as_u64(el, "delta exponent")));
        } else if (el.is_array()) {
            if (el.size() != m)
                bad("delta tuple arity " + std::to_string(el.size()) + " does not match the " +
                    std::to_string(m) + "-variable domain");
            for (const json& c : el)
                t.push_back(static_cast<unsigned>(as_u64(c, "delta exponent")));
        } else {
            bad("\"delta\" entries must be integers or integer tuples");
        }
        for (unsigned i = 0; i < m; ++i) {
            if (dom.kind() == DomainKind::Torus)
                t[i] %= dom.orders()[i];
            else
                t[i] = reduce_grid_exponent(t[i], q);
        }
        out.push_back(std::move(t));
    }
    return out;
}

LinearCode Runner::apply_designed(LinearCode c, const json& node) {
    if (node.contains("designed_note") && !node.contains("designed_d"))
        bad("\"designed_note\" requires \"designed_d\"");
    if (!node.contains("designed_d")) return c;
    auto d = as_u64(node.at("designed_d"), "designed_d");
    if (d < 1 || d > c.length()) bad("\"designed_d\" must lie in [1, n]");
    std::string note = "declared distance bound";
    if (node.contains("designed_note")) {
        const json& nv = node.at("designed_note");
        if (!nv.is_string()) bad("\"designed_note\" must be a string");
        note = nv.get<std::string>();
    }
    return c.with_designed_distance(static_cast<int>(d), note);
}

LinearCode Runner::build_rm(const json& node) {
    check_keys(node, "rm", {"kind", "q", "m", "r", "designed_d", "designed_note"});
    auto [p, e] = prime_power(get_u64(node, "q", "rm"));
    auto m = get_u64(node, "m", "rm");
    auto r = get_u64(node, "r", "rm");
    if (m == 0 || m > 16) bad("\"m\" must be between 1 and 16");
    FieldPtr ctx = field_new(p, e);
    if (r > m * (ctx->q() - 1)) bad("rm order r exceeds m(q-1)");
    return apply_designed(rm_code(static_cast<int>(r), static_cast<unsigned>(m), ctx), node);
}

LinearCode Runner::build_hyperbolic(const json& node) {
    check_keys(node, "hyperbolic", {"kind", "q", "m", "t", "designed_d", "designed_note"});
    auto [p, e] = prime_power(get_u64(node, "q", "hyperbolic"));
    auto m = get_u64(node, "m", "hyperbolic");
    auto t = get_u64(node, "t", "hyperbolic");
    if (m == 0 || m > 16) bad("\"m\" must be between 1 and 16");
    FieldPtr ctx = field_new(p, e);
    return apply_designed(hyperbolic_code(t, static_cast<unsigned>(m), ctx), node);
}

LinearCode Runner::build_affine(const json& node) {
    check_keys(node, "affine",
               {"kind", "q", "domain", "m", "orders", "delta", "dual", "designed_d",
                "designed_note"});
    auto [p, e] = prime_power(get_u64(node, "q", "affine"));
    FieldPtr ctx = field_new(p, e);
    DomainPtr dom = make_domain(node, ctx, "affine");
    auto elements = parse_delta(node, *dom);
    bool want_dual = node.value("dual", false);
    if (elements.empty()) {
        std::size_t n = dom->num_points();
        return apply_designed(want_dual ? full_space(ctx, n) : zero_code(ctx, n), node);
    }
    DefiningSet ds = defining_set(dom, std::move(elements));
    LinearCode c = evaluate(ds);
    if (want_dual) c = dual(c);
    return apply_designed(std::move(c), node);
}

LinearCode Runner::build_subfield(const json& node) {
    check_keys(node, "subfield",
               {"kind", "p", "r", "s", "domain", "m", "orders", "delta", "dual", "designed_d",
                "designed_note"});
    auto p = get_u64(node, "p", "subfield");
    auto r = get_u64(node, "r", "subfield");
    auto s = get_u64(node, "s", "subfield");
    if (!is_prime(static_cast<unsigned>(p))) bad("\"p\" must be prime");
    if (r == 0 || r > 30) bad("\"r\" must be between 1 and 30");
    if (s == 0 || r % s != 0) bad("\"s\" must divide \"r\"");
    FieldPtr ctx = field_new(static_cast<unsigned>(p), static_cast<unsigned>(r));
    DomainPtr dom = make_domain(node, ctx, "subfield");
    auto elements = parse_delta(node, *dom);
    bool want_dual = node.value("dual", false);
    if (elements.empty()) {
        FieldPtr sub = field_new(static_cast<unsigned>(p), static_cast<unsigned>(s));
        std::size_t n = dom->num_points();
        return apply_designed(want_dual ? full_space(sub, n) : zero_code(sub, n), node);
    }
    DefiningSet ds = defining_set(dom, std::move(elements));
    LinearCode c = want_dual
                       ? dual_subfield_code(ds, static_cast<unsigned>(s), opts_.close_orbits)
                       : subfield_code_from_delta(ds, static_cast<unsigned>(s),
                                                  opts_.close_orbits);
    return apply_designed(std::move(c), node);
}

MPMatrix Runner::make_matrix(const json& node) {
    if (!node.is_object()) bad("\"matrix\" must be an object");
    if (node.contains("id")) {
        check_keys(node, "matrix", {"id"});
        const json& iv = node.at("id");
        if (!iv.is_string()) bad("matrix \"id\" must be a string");
        return builtin_matrix(iv.get<std::string>());
    }
    check_keys(node, "matrix", {"q", "entries"});
    auto [p, e] = prime_power(get_u64(node, "q", "matrix"));
    FieldPtr ctx = field_new(p, e);
    const json& rows = require_key(node, "entries", "matrix");
    if (!rows.is_array() || rows.empty()) bad("matrix \"entries\" must be a non-empty array");
    std::size_t ncols = 0;
    std::vector<Fe> flat;
    for (const json& row : rows) {
        if (!row.is_array() || row.empty()) bad("matrix rows must be non-empty arrays");
        if (ncols == 0)
            ncols = row.size();
        else if (row.size() != ncols)
            bad("matrix rows must all have the same length");
        for (const json& v : row) {
            auto label = as_u64(v, "matrix entry");
            if (label >= ctx->q()) bad("matrix entry exceeds the field size");
            flat.push_back(static_cast<Fe>(label));
        }
    }
    return MPMatrix(ctx, rows.size(), ncols, std::move(flat));
}

std::pair<std::vector<LinearCode>, MPMatrix> Runner::mp_parts(const json& mp_node) {
    check_keys(mp_node, "matprod",
               {"kind", "constituents", "matrix", "designed_d", "designed_note"});
    const json& cs = require_key(mp_node, "constituents", "matprod");
    if (!cs.is_array() || cs.empty()) bad("\"constituents\" must be a non-empty array");
    std::vector<LinearCode> codes;
    codes.reserve(cs.size());
    for (const json& c : cs) codes.push_back(build_classical(c));
    MPMatrix A = make_matrix(require_key(mp_node, "matrix", "matprod"));
    return {std::move(codes), std::move(A)};
}

LinearCode Runner::build_matprod(const json& node) {
    auto [codes, A] = mp_parts(node);
    return apply_designed(mp_code(codes, A), node);
}

LinearCode Runner::build_classical(const json& node_in) {
    if (!node_in.is_object()) bad("a recipe must be a JSON object");
    if (node_in.contains("ref")) {
        check_keys(node_in, "reference", {"ref"});
        std::string name = get_string(node_in, "ref", "reference");
        auto hit = classical_cache_.find(name);
        if (hit != classical_cache_.end()) return hit->second;
        if (!visiting_.insert(name).second) bad("cyclic reference through \"" + name + "\"");
        LinearCode c = build_classical(def_named(name));
        visiting_.erase(name);
        classical_cache_.emplace(name, c);
        return c;
    }
    if (!node_in.contains("kind")) bad("recipe needs a \"kind\" or a \"ref\"");
    const json& kv = node_in.at("kind");
    if (!kv.is_string()) bad("\"kind\" must be a string");
    std::string kind = kv.get<std::string>();
    if (kQuantumKinds.count(kind))
        bad("kind \"" + kind + "\" produces quantum parameters where a classical code is required");
    if (kind == "rm") return build_rm(node_in);
    if (kind == "hyperbolic") return build_hyperbolic(node_in);
    if (kind == "affine") return build_affine(node_in);
    if (kind == "subfield") return build_subfield(node_in);
    if (kind == "matprod") return build_matprod(node_in);
    bad("unknown recipe kind \"" + kind + "\"");
}

QuantumParams Runner::build_quantum(const json& node_in) {
    if (!node_in.is_object()) bad("a recipe must be a JSON object");
    if (node_in.contains("ref")) {
        check_keys(node_in, "reference", {"ref"});
        std::string name = get_string(node_in, "ref", "reference");
        auto hit = quantum_cache_.find(name);
        if (hit != quantum_cache_.end()) return hit->second;
        if (!visiting_.insert(name).second) bad("cyclic reference through \"" + name + "\"");
        QuantumParams Q = build_quantum(def_named(name));
        visiting_.erase(name);
        quantum_cache_.emplace(name, Q);
        return Q;
    }
    if (!node_in.contains("kind")) bad("recipe needs a \"kind\" or a \"ref\"");
    const json& kv = node_in.at("kind");
    if (!kv.is_string()) bad("\"kind\" must be a string");
    std::string kind = kv.get<std::string>();
    if (kClassicalKinds.count(kind))
        bad("kind \"" + kind + "\" produces a classical code where quantum parameters are required");

    if (kind == "css") {
        check_keys(node_in, "css", {"kind", "code", "code2"});
        const json& code = require_key(node_in, "code", "css");
        if (node_in.contains("code2"))
            return css_pair(build_classical(code), build_classical(node_in.at("code2")),
                            opts_.budget);
        if (peek_kind(code) == "matprod") {
            auto [codes, A] = mp_parts(resolve(code));
            return quantum_from_mp(codes, A, opts_.budget);
        }
        return css_self(build_classical(code), opts_.budget);
    }
    if (kind == "steane") {
        check_keys(node_in, "steane", {"kind", "inner", "outer"});
        const json& inner = require_key(node_in, "inner", "steane");
        const json& outer = require_key(node_in, "outer", "steane");
        if (peek_kind(inner) == "matprod" && peek_kind(outer) == "matprod") {
            auto [in_codes, in_A] = mp_parts(resolve(inner));
            auto [out_codes, out_A] = mp_parts(resolve(outer));
            if (in_A == out_A) return quantum_from_mp(in_codes, out_codes, in_A, opts_.budget);
            return steane(mp_code(in_codes, in_A), mp_code(out_codes, out_A), opts_.budget);
        }
        return steane(build_classical(inner), build_classical(outer), opts_.budget);
    }
    if (kind == "extend") {
        check_keys(node_in, "extend", {"kind", "code"});
        return extend(build_quantum(require_key(node_in, "code", "extend")));
    }
    if (kind == "subcode") {
        check_keys(node_in, "subcode", {"kind", "code", "k"});
        QuantumParams Q = build_quantum(require_key(node_in, "code", "subcode"));
        return subcode(Q, get_u64(node_in, "k", "subcode"));
    }
    if (kind == "gv-check") {
        check_keys(node_in, "gv-check", {"kind", "code"});
        QuantumParams Q = build_quantum(require_key(node_in, "code", "gv-check"));
        gv_flag_ = exceeds_gv(Q);
        return Q;
    }
    bad("unknown recipe kind \"" + kind + "\"");
}

} // namespace

MPMatrix builtin_matrix(const std::string& id) {
    struct Spec {
        unsigned p, r;
        std::size_t s;
        std::vector<Fe> entries;
    };
    static const std::map<std::string, Spec> specs = {
        {"f2_triple", {2, 1, 3, {1, 0, 1, 1, 1, 0, 1, 1, 1}}},
        {"f3_pair", {3, 1, 2, {1, 1, 2, 1}}},
        {"f4_nsc3", {2, 2, 3, {1, 3, 3, 2, 0, 3, 2, 2, 1}}},
        {"f5_nsc3", {5, 1, 3, {1, 1, 2, 2, 1, 1, 1, 2, 1}}},
        {"f7_nsc3", {7, 1, 3, {2, 3, 3, 3, 2, 3, 3, 3, 2}}},
        {"f5_pair", {5, 1, 2, {1, 1, 4, 1}}},
        {"f7_pair", {7, 1, 2, {1, 1, 6, 1}}},
    };
    auto it = specs.find(id);
    if (it == specs.end()) {
        std::string known;
        for (const auto& [name, spec] : specs) {
            (void)spec;
            known += (known.empty() ? "" : ", ") + name;
        }
        throw schema_error("recipe: unknown matrix id \"" + id + "\" (known ids: " + known + ")");
    }
    const Spec& sp = it->second;
    return MPMatrix(field_new(sp.p, sp.r), sp.s, sp.s, sp.entries);
}

RecipeResult run_recipe(const std::string& json_text, const RecipeOptions& opts) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw schema_error(std::string("recipe: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw schema_error("recipe: the top level must be a JSON object");
    json defs = json::object();
    if (doc.contains("defs")) {
        defs = doc.at("defs");
        if (!defs.is_object()) throw schema_error("recipe: \"defs\" must be an object");
        for (const auto& item : defs.items())
            if (!item.value().is_object())
                throw schema_error("recipe: definition \"" + item.key() +
                                   "\" must be a JSON object");
        doc.erase("defs");
    }
    if (doc.empty()) throw schema_error("recipe: empty recipe (needs a \"kind\" or a \"ref\")");

    Runner runner(&defs, opts);
    RecipeResult result;
    // Classify the top node: follow refs to find its kind.
    {
        const json* cur = &doc;
        std::set<std::string> seen;
        while (cur->is_object() && cur->contains("ref")) {
            const json& rv = cur->at("ref");
            if (!rv.is_string()) throw schema_error("recipe: \"ref\" must be a string");
            std::string name = rv.get<std::string>();
            if (!seen.insert(name).second)
                throw schema_error("recipe: cyclic reference through \"" + name + "\"");
            if (!defs.contains(name))
                throw schema_error("recipe: reference \"" + name +
                                   "\" does not resolve to any definition");
            cur = &defs.at(name);
        }
        if (!cur->is_object() || !cur->contains("kind") || !cur->at("kind").is_string())
            throw schema_error("recipe: recipe needs a \"kind\" or a \"ref\"");
        std::string kind = cur->at("kind").get<std::string>();
        if (kClassicalKinds.count(kind)) {
            result.code = runner.build_classical(doc);
        } else if (kQuantumKinds.count(kind)) {
            result.quantum = runner.build_quantum(doc);
            result.exceeds_gv_bound = runner.gv_flag();
        } else {
            throw schema_error("recipe: unknown recipe kind \"" + kind + "\"");
        }
    }
    return result;
}

namespace {

nlohmann::ordered_json classical_json(const LinearCode& c) {
    nlohmann::ordered_json j;
    j["type"] = "classical";
    j["q"] = c.field()->q();
    j["n"] = c.length();
    j["k"] = c.dimension();
    if (auto de = c.known_exact_distance()) {
        j["d"] = *de;
        j["d_exact"] = true;
    } else if (auto db = c.designed_distance()) {
        j["d_bound"] = *db;
        j["d_exact"] = false;
        j["designed_note"] = c.designed_note();
    }
    return j;
}

std::string classical_d_text(const LinearCode& c) {
    if (auto de = c.known_exact_distance()) return std::to_string(*de);
    if (auto db = c.designed_distance()) return ">=" + std::to_string(*db);
    return "-";
}

} // namespace

std::string recipe_result_to_json(const RecipeResult& r) {
    if (r.quantum) {
        nlohmann::ordered_json j;
        j["type"] = "quantum";
        nlohmann::ordered_json params =
            nlohmann::ordered_json::parse(quantum_params_to_json(*r.quantum));
        for (auto& item : params.items()) j[item.key()] = item.value();
        if (r.exceeds_gv_bound) j["exceeds_gv"] = *r.exceeds_gv_bound;
        return j.dump(2);
    }
    if (r.code) return classical_json(*r.code).dump(2);
    throw schema_error("recipe result is empty");
}

std::string recipe_result_to_csv(const RecipeResult& r) {
    if (r.quantum) {
        std::string row = quantum_params_to_csv(*r.quantum);
        if (r.exceeds_gv_bound)
            row += *r.exceeds_gv_bound ? ",exceeds_gv" : ",within_gv";
        return row;
    }
    if (r.code) {
        const LinearCode& c = *r.code;
        return std::to_string(c.length()) + "," + std::to_string(c.dimension()) + "," +
               classical_d_text(c) + ",GF(" + std::to_string(c.field()->q()) + ")";
    }
    throw schema_error("recipe result is empty");
}

std::string recipe_result_to_markdown(const RecipeResult& r) {
    if (r.quantum) {
        std::string row = quantum_params_to_markdown(*r.quantum);
        if (r.exceeds_gv_bound)
            row += std::string(" ") + (*r.exceeds_gv_bound ? "exceeds GV |" : "within GV |");
        return row;
    }
    if (r.code) {
        const LinearCode& c = *r.code;
        return "| " + std::to_string(c.length()) + " | " + std::to_string(c.dimension()) + " | " +
               classical_d_text(c) + " | GF(" + std::to_string(c.field()->q()) + ") |";
    }
    throw schema_error("recipe result is empty");
}

} // namespace stabkit
