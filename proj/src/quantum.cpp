#include "stabkit/quantum.hpp"

#include <algorithm>

#include "json.hpp"
#include "stabkit/errors.hpp"

namespace stabkit {

namespace {

using boost::multiprecision::cpp_int;

cpp_int binom(std::size_t x, std::size_t l) {
    if (l > x) return 0;
    cpp_int acc = 1;
    for (std::size_t t = 1; t <= l; ++t) {
        acc *= static_cast<unsigned long>(x - l + t);
        acc /= static_cast<unsigned long>(t);
    }
    return acc;
}

// Krawtchouk polynomial K_j(i) over GF(q) at length n:
//   K_j(i) = sum_l (-1)^l (q-1)^(j-l) C(i,l) C(n-i, j-l)
cpp_int krawtchouk(unsigned q, std::size_t n, std::size_t j, std::size_t i) {
    cpp_int acc = 0;
    cpp_int qm1pow = 1;
    for (std::size_t t = 0; t < j; ++t) qm1pow *= (q - 1);
    for (std::size_t l = 0; l <= j; ++l) {
        if (l > i || j - l > n - i) {
            if (l < j) qm1pow /= (q - 1);
            continue;
        }
        cpp_int term = qm1pow * binom(i, l) * binom(n - i, j - l);
        if (l % 2) acc -= term;
        else acc += term;
        if (l < j) qm1pow /= (q - 1);
    }
    return acc;
}

// Number of weight-j words of a code, recovered from the weight
// distribution of its dual via one MacWilliams coefficient.
cpp_int count_via_dual(const std::vector<cpp_int>& dualDist, unsigned q, std::size_t n,
                       std::size_t j) {
    cpp_int acc = 0;
    cpp_int size = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        if (dualDist[i] == 0) continue;
        size += dualDist[i];
        acc += dualDist[i] * krawtchouk(q, n, j, i);
    }
    cpp_int quot = acc / size;
    if (quot * size != acc)
        throw std::logic_error("MacWilliams coefficient is not an integer");
    return quot;
}

std::string code_label(const LinearCode& C) {
    return "[" + std::to_string(C.length()) + "," + std::to_string(C.dimension()) + "]_" +
           std::to_string(C.field()->q());
}

std::string params_label(const QuantumParams& Q) {
    return "[[" + std::to_string(Q.n) + "," + std::to_string(Q.k) +
           (Q.d_exact ? "," : ",>=") + std::to_string(Q.d_bound) + "]]_" + std::to_string(Q.q);
}

struct DiffWeight {
    int w = 1;
    bool exact = false;
    std::string route;
};

std::string describe(const DiffWeight& s) {
    return std::to_string(s.w) + (s.exact ? " (exact, " : " (bound, ") + s.route + ")";
}

// Minimum weight over C \ D for a proper subcode D of C, with exactness.
// Routes, in order of preference:
//   1. direct enumeration of C when q^dim(C) fits the budget;
//   2. compare the weight distributions of C and D, each obtained either
//      directly or through its dual via MacWilliams, and report the first
//      weight where the counts diverge;
//   3. fall back to the designed bound carried by C (inexact).
DiffWeight difference_distance(const LinearCode& C, const LinearCode& D, std::uint64_t budget) {
    const unsigned q = C.field()->q();
    const std::size_t n = C.length();
    if (!contains(C, D))
        throw schema_error("set difference requires the second code to be a subcode of the first");
    if (C.dimension() == D.dimension())
        throw schema_error("set difference of a code with itself is empty");

    if (pow_saturating(q, C.dimension()) <= budget) {
        WeightResult r = min_weight_difference(C, D, budget);
        return {r.weight, r.exact, "enumeration"};
    }

    if (pow_saturating(q, n - C.dimension()) <= budget) {
        const LinearCode Cd = dual(C);
        const std::vector<cpp_int> cdualDist = weight_distribution(Cd, budget);
        // counts of D, either directly or through its own dual
        std::optional<std::vector<cpp_int>> dDirect;
        std::optional<std::vector<cpp_int>> dDual;
        if (D == Cd) {
            dDirect = cdualDist;
        } else if (pow_saturating(q, D.dimension()) <= budget) {
            dDirect = weight_distribution(D, budget);
        } else if (pow_saturating(q, n - D.dimension()) <= budget) {
            dDual = weight_distribution(dual(D), budget);
        }
        if (dDirect || dDual) {
            for (std::size_t j = 1; j <= n; ++j) {
                const cpp_int a = count_via_dual(cdualDist, q, n, j);
                const cpp_int b = dDirect ? (*dDirect)[j] : count_via_dual(*dDual, q, n, j);
                if (a < b)
                    throw std::logic_error("weight distribution of a subcode exceeds its parent");
                if (a > b) return {static_cast<int>(j), true, "weight distributions"};
            }
            throw std::logic_error("proper subcode with identical weight distribution");
        }
    }

    WeightResult r = min_weight(C, budget);
    return {r.weight, false, "designed bound"};
}

// Shared CSS core: preconditions, dimension arithmetic, purity, and the
// minimum weight over the two set differences with exactness composition.
QuantumParams css_core(const LinearCode& C1, const LinearCode& C2, std::uint64_t budget,
                       bool self_form) {
    if (C1.field().get() != C2.field().get())
        throw schema_error("CSS construction requires codes over the same field context");
    if (C1.length() != C2.length())
        throw schema_error("CSS construction requires codes of the same length");
    if (C1.dimension() == 0 || C2.dimension() == 0)
        throw schema_error("CSS construction requires positive-dimensional codes");
    const LinearCode D2 = dual(C2);
    if (!contains(C1, D2))
        throw precondition_error(
            self_form ? "self-dual CSS construction requires a code containing its dual"
                      : "CSS construction requires the dual of the second code inside the first");

    QuantumParams Q;
    Q.q = C1.field()->q();
    Q.n = C1.length();
    const std::size_t k1 = C1.dimension();
    const std::size_t k2 = C2.dimension();
    Q.k = k1 + k2 - Q.n; // containment gives k1 >= n - k2

    const WeightResult d1 = min_weight(C1, budget);
    const WeightResult d2 = self_form ? d1 : min_weight(C2, budget);
    Q.purity = std::min(d1.weight, d2.weight);

    std::string detail = self_form ? ("C=" + code_label(C1))
                                   : ("C1=" + code_label(C1) + ", C2=" + code_label(C2));
    if (Q.k == 0) {
        // both set differences are empty; report the stabilizer's own
        // minimum weight (the constituent purity) as an inexact bound
        Q.d_bound = *Q.purity;
        Q.d_exact = false;
        detail += "; k=0, distance taken as constituent minimum weight";
    } else {
        const DiffWeight s1 = difference_distance(C1, D2, budget);
        const DiffWeight s2 = self_form ? s1 : difference_distance(C2, dual(C1), budget);
        if (s1.exact && s2.exact) {
            Q.d_bound = std::min(s1.w, s2.w);
            Q.d_exact = true;
        } else if (s1.exact && s1.w <= s2.w) {
            Q.d_bound = s1.w;
            Q.d_exact = true;
        } else if (s2.exact && s2.w <= s1.w) {
            Q.d_bound = s2.w;
            Q.d_exact = true;
        } else {
            Q.d_bound = std::min(s1.w, s2.w);
            Q.d_exact = false;
        }
        if (self_form) detail += "; difference weight " + describe(s1);
        else detail += "; difference weights " + describe(s1) + ", " + describe(s2);
    }
    Q.provenance.push_back({self_form ? "css_self" : "css", detail});
    return Q;
}

} // namespace

QuantumParams css_pair(const LinearCode& C1, const LinearCode& C2, std::uint64_t budget) {
    return css_core(C1, C2, budget, false);
}

QuantumParams css_self(const LinearCode& C, std::uint64_t budget) {
    return css_core(C, C, budget, true);
}

QuantumParams steane(const LinearCode& C, const LinearCode& Cp, std::uint64_t budget) {
    if (C.field().get() != Cp.field().get())
        throw schema_error("Steane enlargement requires codes over the same field context");
    if (C.length() != Cp.length())
        throw schema_error("Steane enlargement requires codes of the same length");
    if (!contains(C, dual(C)))
        throw precondition_error("Steane enlargement requires the base code to contain its dual");
    if (!contains(Cp, C))
        throw precondition_error("Steane enlargement requires the base code inside the enlarged one");
    if (Cp.dimension() < C.dimension() + 2)
        throw precondition_error(
            "Steane enlargement requires the enlarged code to add at least two dimensions");

    QuantumParams Q;
    Q.q = C.field()->q();
    Q.n = C.length();
    Q.k = C.dimension() + Cp.dimension() - Q.n;

    const LinearCode Cpd = dual(Cp);
    if (!contains(C, Cpd))
        throw precondition_error(
            "Steane enlargement requires the dual of the enlarged code inside the base code");
    const DiffWeight dprime = difference_distance(C, Cpd, budget);
    const DiffWeight dsecond = difference_distance(Cp, Cpd, budget);
    const int enlarged = ((Q.q + 1) * dsecond.w + Q.q - 1) / Q.q;
    Q.d_bound = std::min(dprime.w, enlarged);
    Q.d_exact = false; // the enlargement rule only bounds the distance
    Q.purity.reset();
    Q.provenance.push_back(
        {"steane_enlargement", "C=" + code_label(C) + " inside C'=" + code_label(Cp) +
                                   "; d'=" + describe(dprime) + ", d''=" + describe(dsecond) +
                                   ", ceil((q+1)d''/q)=" + std::to_string(enlarged)});
    return Q;
}

QuantumParams extend(const QuantumParams& src) {
    QuantumParams Q = src;
    Q.n = src.n + 1;
    Q.d_exact = false;
    Q.purity.reset();
    Q.provenance.push_back({"extend", "length " + std::to_string(src.n) + " -> " +
                                          std::to_string(Q.n) + " from " + params_label(src) +
                                          "; distance kept by assumption (extension rule "
                                          "unstated)"});
    return Q;
}

QuantumParams subcode(const QuantumParams& src, std::size_t k_new) {
    if (k_new >= src.k)
        throw schema_error("subcode dimension must be smaller than the current dimension");
    QuantumParams Q = src;
    Q.k = k_new;
    Q.d_exact = false;
    Q.purity.reset();
    Q.provenance.push_back({"subcode", "dimension " + std::to_string(src.k) + " -> " +
                                           std::to_string(k_new) + " from " + params_label(src) +
                                           " at fixed length; distance bound kept"});
    return Q;
}

bool exceeds_gv(const QuantumParams& Q) {
    if (Q.d_bound < 2) return false;
    const cpp_int q = Q.q;
    std::size_t k_eff = Q.k;
    if ((Q.n - Q.k) % 2 != 0) {
        if (k_eff == 0) return false;
        k_eff -= 1;
    }
    const std::size_t exponent = Q.n - k_eff + 2; // even, so q^2-1 divides q^exponent-1
    cpp_int lhs = 1;
    for (std::size_t t = 0; t < exponent; ++t) lhs *= q;
    lhs = (lhs - 1) / (q * q - 1);
    cpp_int rhs = 0;
    cpp_int pw = 1;
    for (int i = 1; i <= Q.d_bound - 1; ++i) {
        rhs += pw * binom(Q.n, static_cast<std::size_t>(i));
        pw *= (q * q - 1);
    }
    // existence is guaranteed while lhs > rhs; the parameters exceed the
    // threshold once the inequality fails
    return lhs <= rhs;
}

QuantumParams quantum_from_mp(const std::vector<LinearCode>& constituents, const MPMatrix& A,
                              std::uint64_t budget) {
    const LinearCode M = mp_code(constituents, A);
    if (!contains(M, dual(M)))
        throw precondition_error(
            "matrix-product pipeline: the product code does not contain its dual");
    QuantumParams Q = css_self(M, budget);
    std::string detail = "[";
    for (std::size_t i = 0; i < constituents.size(); ++i)
        detail += (i ? "," : "") + code_label(constituents[i]);
    detail += "]*A (" + std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
              (A.orthogonal() ? ", orthogonal" : "") + (A.nsc() ? ", NSC" : "") +
              ") -> " + code_label(M);
    Q.provenance.insert(Q.provenance.begin(), {"matrix_product", detail});
    return Q;
}

QuantumParams quantum_from_mp(const std::vector<LinearCode>& inner,
                              const std::vector<LinearCode>& outer, const MPMatrix& A,
                              std::uint64_t budget) {
    const LinearCode Min = mp_code(inner, A);
    const LinearCode Mout = mp_code(outer, A);
    if (!contains(Min, dual(Min)))
        throw precondition_error(
            "matrix-product pipeline: the inner product code does not contain its dual");
    if (!contains(Mout, Min))
        throw precondition_error(
            "matrix-product pipeline: the inner product code is not inside the outer one");
    QuantumParams Q = steane(Min, Mout, budget);
    std::string detail = "inner [";
    for (std::size_t i = 0; i < inner.size(); ++i) detail += (i ? "," : "") + code_label(inner[i]);
    detail += "]*A -> " + code_label(Min) + ", outer [";
    for (std::size_t i = 0; i < outer.size(); ++i) detail += (i ? "," : "") + code_label(outer[i]);
    detail += "]*A -> " + code_label(Mout);
    Q.provenance.insert(Q.provenance.begin(), {"matrix_product", detail});
    return Q;
}

std::string quantum_params_to_json(const QuantumParams& Q) {
    nlohmann::ordered_json j;
    j["q"] = Q.q;
    j["n"] = Q.n;
    j["k"] = Q.k;
    j["d_bound"] = Q.d_bound;
    j["d_exact"] = Q.d_exact;
    if (Q.purity) j["purity"] = *Q.purity;
    else j["purity"] = nullptr;
    j["provenance"] = nlohmann::ordered_json::array();
    for (const auto& step : Q.provenance)
        j["provenance"].push_back({{"rule", step.rule}, {"detail", step.detail}});
    return j.dump();
}

QuantumParams quantum_params_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw schema_error(std::string("invalid quantum-parameter JSON: ") + e.what());
    }
    QuantumParams Q;
    try {
        Q.q = j.at("q").get<unsigned>();
        Q.n = j.at("n").get<std::size_t>();
        Q.k = j.at("k").get<std::size_t>();
        Q.d_bound = j.at("d_bound").get<int>();
        Q.d_exact = j.at("d_exact").get<bool>();
        if (j.contains("purity") && !j.at("purity").is_null())
            Q.purity = j.at("purity").get<int>();
        for (const auto& step : j.at("provenance"))
            Q.provenance.push_back(
                {step.at("rule").get<std::string>(), step.at("detail").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
        throw schema_error(std::string("invalid quantum-parameter JSON: ") + e.what());
    }
    if (Q.q < 2) throw schema_error("quantum parameters require a field size of at least 2");
    if (Q.n == 0 || Q.k > Q.n)
        throw schema_error("quantum parameters require 0 <= k <= n with n positive");
    if (Q.d_bound < 1 || static_cast<std::size_t>(Q.d_bound) > Q.n)
        throw schema_error("quantum parameters require 1 <= d_bound <= n");
    if (Q.purity && (*Q.purity < 1 || static_cast<std::size_t>(*Q.purity) > Q.n))
        throw schema_error("quantum purity out of range");
    if (Q.provenance.empty())
        throw schema_error("quantum parameters require a non-empty provenance chain");
    return Q;
}

std::string quantum_params_to_csv(const QuantumParams& Q) {
    return std::to_string(Q.n) + "," + std::to_string(Q.k) + "," +
           (Q.d_exact ? "" : ">=") + std::to_string(Q.d_bound) + ",GF(" + std::to_string(Q.q) +
           ")";
}

std::string quantum_params_to_markdown(const QuantumParams& Q) {
    return "| " + std::to_string(Q.n) + " | " + std::to_string(Q.k) + " | " +
           (Q.d_exact ? "" : "≥") + std::to_string(Q.d_bound) + " | GF(" +
           std::to_string(Q.q) + ") |";
}

} // namespace stabkit
