#pragma once

// A small declarative JSON language for building codes and deriving
// stabilizer parameters. A recipe is a JSON object with a "kind" (or a
// {"ref": name} pointer into the optional top-level "defs" map):
//
//   classical kinds: rm, hyperbolic, affine, subfield, matprod
//   quantum kinds:   css, steane, extend, subcode, gv-check
//
// Classical nodes may carry "designed_d"/"designed_note" to attach a
// tabulated distance bound, and affine/subfield nodes accept "dual": true.
// References form a DAG; cycles and malformed shapes are schema errors.

#include <cstdint>
#include <optional>
#include <string>

#include "stabkit/linear_code.hpp"
#include "stabkit/matprod.hpp"
#include "stabkit/quantum.hpp"

namespace stabkit {

struct RecipeOptions {
    std::uint64_t budget = kDefaultBudget;
    bool close_orbits = false; // close defining sets under the orbit rule
                               // instead of rejecting non-closed ones
    unsigned jobs = 1;         // worker threads for distance enumerations
};

// Outcome of running a recipe: exactly one of code/quantum is set by the
// top-level kind (gv-check sets quantum and the flag).
struct RecipeResult {
    std::optional<LinearCode> code;
    std::optional<QuantumParams> quantum;
    std::optional<bool> exceeds_gv_bound;
};

// Fixed matrices available to matrix-product recipes by id:
//   f2_triple (3x3 over GF(2)),  f3_pair (2x2 over GF(3)),
//   f4_nsc3 / f5_nsc3 / f7_nsc3 (3x3, orthogonal and non-singular by
//   columns over GF(4)/GF(5)/GF(7)),
//   f5_pair / f7_pair (2x2 over GF(5)/GF(7) with A A^t = 2I).
MPMatrix builtin_matrix(const std::string& id);

// Parse and execute a recipe. Shape problems (bad JSON, unknown kinds or
// keys, unresolved or cyclic refs) throw schema_error; violated mathematical
// preconditions throw precondition_error; enumerations that would exceed the
// budget throw budget_error.
RecipeResult run_recipe(const std::string& json_text, const RecipeOptions& opts = {});

// Renderings of a result: a JSON object (always includes n, k and the
// distance information), one CSV row, or one markdown table row.
std::string recipe_result_to_json(const RecipeResult& r);
std::string recipe_result_to_csv(const RecipeResult& r);
std::string recipe_result_to_markdown(const RecipeResult& r);

} // namespace stabkit
