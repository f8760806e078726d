#pragma once

// The built-in reference tables of code parameters and the machinery that
// rebuilds every row from its stored recipe and compares the result against
// the tabulated values.
//
// Row checking rules:
//   * (q, n, k) must match exactly (against expect_corrected when a row is
//     flagged printed_inconsistent, since such a row's tabulated values are
//     internally contradictory);
//   * the derived distance must be consistent with the tabulated bound: an
//     exactly computed distance at least as large, or a designed bound at
//     least as large ("parameters reproduced, distance taken as designed
//     bound" when enumeration does not fit in the budget);
//   * rows flagged parameter_only with no recipe receive arithmetic range
//     checks only.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stabkit/linear_code.hpp"

namespace stabkit {

struct ExpectedQuantum {
    unsigned q = 0;
    std::size_t n = 0;
    std::size_t k = 0;
    int d = 1;
};

struct ExpectedClassical {
    unsigned q = 0;
    std::size_t n = 0;
    std::size_t k = 0;
};

struct TableRowFixture {
    std::string label;
    std::optional<ExpectedQuantum> expect;            // tabulated quantum row
    std::optional<ExpectedQuantum> expect_corrected;  // replacement for an
                                                      // inconsistent tabulation
    std::optional<ExpectedClassical> expect_classical; // defining-set row
    std::string recipe_json; // self-contained recipe (defs merged); "" if none
    std::string status;      // "ok" | "parameter_only" | "printed_inconsistent"
    std::string note;
};

struct TableFixture {
    int table = 0;
    std::string title;
    std::vector<TableRowFixture> rows;
};

// The compiled-in fixtures (parsed once and cached; 16 tables).
const std::vector<TableFixture>& load_fixtures();

// Parse a fixture document from JSON text (same schema as the embedded set).
std::vector<TableFixture> load_fixtures_from(const std::string& json_text);

// Lookup by table number in a fixture set; unknown numbers are schema errors.
const TableFixture& fixture_for_table(const std::vector<TableFixture>& fixtures, int table);

struct RowReport {
    std::size_t index = 0;
    std::string label;
    std::string status;
    bool ok = false;
    std::string expected; // rendering of the tabulated values
    std::string derived;  // rendering of the rebuilt values
    std::string detail;   // distance route, flags, or mismatch description
};

struct TableReport {
    int table = 0;
    std::string title;
    bool all_ok = true;
    std::vector<RowReport> rows;
};

struct ReproduceOptions {
    std::uint64_t budget = kDefaultBudget;
    bool close_orbits = false;
    unsigned jobs = 1; // rows are rebuilt concurrently; report order is fixed
};

TableReport reproduce_table(const TableFixture& fixture, const ReproduceOptions& opts = {});

std::string table_report_to_json(const TableReport& report);
std::string table_report_to_csv(const TableReport& report);
std::string table_report_to_markdown(const TableReport& report);

namespace detail {
// Raw JSON of the embedded fixtures (generated at configure time).
std::string_view embedded_table_fixtures();
} // namespace detail

} // namespace stabkit
