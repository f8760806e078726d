// stabkit: build evaluation-style classical codes from JSON recipes, derive
// stabilizer-code parameters, reproduce the built-in reference tables, and
// census the small orthogonal matrices used by matrix-product constructions.
//
// Exit codes: 0 success; 1 a reproduced table row failed (or an unexpected
// internal error); 2 schema problem (bad JSON, unknown kind/flag/table);
// 3 violated mathematical precondition; 4 enumeration budget exceeded.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "stabkit/errors.hpp"
#include "stabkit/galois.hpp"
#include "stabkit/linear_code.hpp"
#include "stabkit/matprod.hpp"
#include "stabkit/recipe.hpp"
#include "stabkit/tables.hpp"

namespace {

struct GlobalOpts {
    std::uint64_t budget = stabkit::kDefaultBudget;
    bool close_orbits = false;
    unsigned jobs = 1;
    std::string format = "json";
};

stabkit::RecipeOptions recipe_opts(const GlobalOpts& g) {
    stabkit::RecipeOptions o;
    o.budget = g.budget;
    o.close_orbits = g.close_orbits;
    o.jobs = g.jobs;
    return o;
}

stabkit::ReproduceOptions reproduce_opts(const GlobalOpts& g) {
    stabkit::ReproduceOptions o;
    o.budget = g.budget;
    o.close_orbits = g.close_orbits;
    o.jobs = g.jobs;
    return o;
}

// Reads a whole file, or stdin when the path is "-".
std::string read_text_input(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw stabkit::schema_error("cannot open input file: " + path);
        ss << in.rdbuf();
    }
    return ss.str();
}

// Prints text followed by exactly one trailing newline.
void emit(const std::string& text) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
}

void emit_result(const stabkit::RecipeResult& r, const std::string& format) {
    if (format == "csv")
        emit(stabkit::recipe_result_to_csv(r));
    else if (format == "md")
        emit(stabkit::recipe_result_to_markdown(r));
    else
        emit(stabkit::recipe_result_to_json(r));
}

void emit_report(const stabkit::TableReport& rep, const std::string& format) {
    if (format == "csv")
        emit(stabkit::table_report_to_csv(rep));
    else if (format == "md")
        emit(stabkit::table_report_to_markdown(rep));
    else
        emit(stabkit::table_report_to_json(rep));
}

void emit_reports(const std::vector<stabkit::TableReport>& reports, const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& rep : reports)
            arr.push_back(nlohmann::ordered_json::parse(stabkit::table_report_to_json(rep)));
        emit(arr.dump(2));
        return;
    }
    std::string out;
    for (const auto& rep : reports) {
        std::string block =
            format == "csv" ? stabkit::table_report_to_csv(rep) : stabkit::table_report_to_markdown(rep);
        if (!out.empty()) out += '\n';
        out += block;
        if (out.empty() || out.back() != '\n') out += '\n';
    }
    std::cout << out;
}

// Smallest (p, e) with p prime and p^e == q; plain integers are not field
// sizes unless they are prime powers.
std::pair<unsigned, unsigned> prime_power(std::uint64_t q) {
    if (q < 2) throw stabkit::schema_error("field size must be at least 2");
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
    if (v != 1)
        throw stabkit::schema_error("field size " + std::to_string(q) + " is not a prime power");
    return {p, e};
}

void run_search_matrices(unsigned q, unsigned s, bool emit_list, const GlobalOpts& g) {
    auto [p, e] = prime_power(q);
    std::uint64_t candidates = stabkit::pow_saturating(q, std::uint64_t{s} * s);
    if (candidates > g.budget)
        throw stabkit::budget_error(
            "the census scans q^(s^2) = " + std::to_string(candidates) + " candidate " +
            std::to_string(s) + "x" + std::to_string(s) + " matrices over GF(" + std::to_string(q) +
            "), above the budget of " + std::to_string(g.budget) + "; raise --budget");
    stabkit::FieldPtr ctx = stabkit::field_new(p, e);
    std::vector<stabkit::MPMatrix> found = stabkit::enumerate_orthogonal(ctx, s, false);
    std::size_t nsc_count = static_cast<std::size_t>(
        std::count_if(found.begin(), found.end(), [](const stabkit::MPMatrix& A) { return A.nsc(); }));

    if (g.format == "json") {
        nlohmann::ordered_json j;
        j["q"] = q;
        j["s"] = s;
        j["orthogonal_count"] = found.size();
        j["nsc_count"] = nsc_count;
        if (emit_list) {
            nlohmann::ordered_json list = nlohmann::ordered_json::array();
            for (const auto& A : found) {
                nlohmann::ordered_json entry;
                nlohmann::ordered_json rows = nlohmann::ordered_json::array();
                for (std::size_t i = 0; i < A.rows(); ++i) {
                    nlohmann::ordered_json row = nlohmann::ordered_json::array();
                    for (std::size_t jcol = 0; jcol < A.cols(); ++jcol) row.push_back(A.at(i, jcol));
                    rows.push_back(std::move(row));
                }
                entry["entries"] = std::move(rows);
                entry["nsc"] = A.nsc();
                list.push_back(std::move(entry));
            }
            j["matrices"] = std::move(list);
        }
        emit(j.dump(2));
        return;
    }

    auto flat = [](const stabkit::MPMatrix& A) {
        std::string t;
        for (std::size_t i = 0; i < A.entries().size(); ++i) {
            if (i) t += ' ';
            t += std::to_string(A.entries()[i]);
        }
        return t;
    };
    std::string out;
    if (g.format == "csv") {
        out = "q,s,orthogonal_count,nsc_count\n" + std::to_string(q) + "," + std::to_string(s) +
              "," + std::to_string(found.size()) + "," + std::to_string(nsc_count) + "\n";
        if (emit_list) {
            out += "index,nsc,entries\n";
            for (std::size_t i = 0; i < found.size(); ++i)
                out += std::to_string(i) + "," + (found[i].nsc() ? "yes" : "no") + "," +
                       flat(found[i]) + "\n";
        }
    } else {
        out = "| q | s | orthogonal | non-singular by columns |\n|---|---|---|---|\n| " +
              std::to_string(q) + " | " + std::to_string(s) + " | " + std::to_string(found.size()) +
              " | " + std::to_string(nsc_count) + " |\n";
        if (emit_list) {
            out += "\n| # | nsc | entries (row-major, base-p element labels) |\n|---|---|---|\n";
            for (std::size_t i = 0; i < found.size(); ++i)
                out += "| " + std::to_string(i) + " | " + (found[i].nsc() ? "yes" : "no") + " | " +
                       flat(found[i]) + " |\n";
        }
    }
    std::cout << out;
}

void run_mindist(const std::string& path, const GlobalOpts& g) {
    stabkit::RecipeResult r = stabkit::run_recipe(read_text_input(path), recipe_opts(g));
    if (!r.code)
        throw stabkit::schema_error(
            "mindist needs a recipe whose top-level kind builds a classical code "
            "(rm, hyperbolic, affine, subfield or matprod)");
    stabkit::WeightResult w = stabkit::min_weight(*r.code, g.budget, g.jobs);
    const stabkit::LinearCode& c = *r.code;
    if (g.format == "json") {
        nlohmann::ordered_json j;
        j["q"] = c.field()->q();
        j["n"] = c.length();
        j["k"] = c.dimension();
        j["weight"] = w.weight;
        j["exact"] = w.exact;
        emit(j.dump(2));
    } else if (g.format == "csv") {
        emit("q,n,k,weight,exact\n" + std::to_string(c.field()->q()) + "," +
             std::to_string(c.length()) + "," + std::to_string(c.dimension()) + "," +
             std::to_string(w.weight) + "," + (w.exact ? "yes" : "no"));
    } else {
        emit("| q | n | k | weight | exact |\n|---|---|---|---|---|\n| " +
             std::to_string(c.field()->q()) + " | " + std::to_string(c.length()) + " | " +
             std::to_string(c.dimension()) + " | " + std::to_string(w.weight) + " | " +
             (w.exact ? "yes" : "no") + " |");
    }
}

} // namespace

int main(int argc, char** argv) {
    GlobalOpts g;
    int exit_code = 0;

    CLI::App app{
        "stabkit: classical evaluation codes, subfield-subcodes and matrix-product codes "
        "from JSON recipes; stabilizer-code parameters via the CSS and Steane-enlargement "
        "constructions; reproduction of the built-in reference tables."};
    app.require_subcommand(1);
    app.set_version_flag("--version", "stabkit 0.1.0");

    app.add_option("--budget", g.budget,
                   "enumeration budget: exact distances are computed only when the codeword "
                   "count fits (mirrors the QCF_BUDGET environment variable)")
        ->envname("QCF_BUDGET")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_flag("--close-orbits", g.close_orbits,
                 "close defining sets under the subfield orbit rule instead of rejecting "
                 "non-closed ones");
    app.add_option("--jobs", g.jobs, "worker threads for enumerations and table rows")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "md"}))
        ->capture_default_str();

    std::string construct_path;
    CLI::App* construct = app.add_subcommand(
        "construct", "run a recipe with a classical top-level kind and print the code parameters");
    construct->fallthrough();
    construct->add_option("recipe", construct_path, "recipe JSON file, or - for stdin")->required();
    construct->callback([&] {
        stabkit::RecipeResult r =
            stabkit::run_recipe(read_text_input(construct_path), recipe_opts(g));
        if (!r.code)
            throw stabkit::schema_error(
                "construct needs a recipe whose top-level kind builds a classical code "
                "(rm, hyperbolic, affine, subfield or matprod); use the quantum subcommand "
                "for stabilizer recipes");
        emit_result(r, g.format);
    });

    std::string quantum_path;
    CLI::App* quantum = app.add_subcommand(
        "quantum", "run a recipe with a quantum top-level kind and print the stabilizer parameters");
    quantum->fallthrough();
    quantum->add_option("recipe", quantum_path, "recipe JSON file, or - for stdin")->required();
    quantum->callback([&] {
        stabkit::RecipeResult r = stabkit::run_recipe(read_text_input(quantum_path), recipe_opts(g));
        if (!r.quantum)
            throw stabkit::schema_error(
                "quantum needs a recipe whose top-level kind derives stabilizer parameters "
                "(css, steane, extend, subcode or gv-check); use the construct subcommand "
                "for classical recipes");
        emit_result(r, g.format);
    });

    int table = 0;
    bool all_tables = false;
    std::string fixtures_path;
    CLI::App* reproduce = app.add_subcommand(
        "reproduce",
        "rebuild reference-table rows from their stored recipes and compare against the "
        "tabulated parameters (exit 1 if any row fails)");
    reproduce->fallthrough();
    CLI::Option* table_opt = reproduce->add_option("--table", table, "table number to reproduce");
    CLI::Option* all_opt = reproduce->add_flag("--all", all_tables, "reproduce every table");
    table_opt->excludes(all_opt);
    reproduce->add_option("--fixtures", fixtures_path,
                          "external fixture document (same JSON schema as the embedded tables)");
    reproduce->callback([&] {
        if (!all_tables && table == 0)
            throw stabkit::schema_error("reproduce needs either --table N or --all");
        const std::vector<stabkit::TableFixture>* fixtures = &stabkit::load_fixtures();
        std::vector<stabkit::TableFixture> external;
        if (!fixtures_path.empty()) {
            external = stabkit::load_fixtures_from(read_text_input(fixtures_path));
            fixtures = &external;
        }
        if (all_tables) {
            std::vector<stabkit::TableReport> reports;
            reports.reserve(fixtures->size());
            bool ok = true;
            for (const auto& f : *fixtures) {
                reports.push_back(stabkit::reproduce_table(f, reproduce_opts(g)));
                ok = ok && reports.back().all_ok;
            }
            emit_reports(reports, g.format);
            if (!ok) exit_code = 1;
        } else {
            stabkit::TableReport rep =
                stabkit::reproduce_table(stabkit::fixture_for_table(*fixtures, table),
                                         reproduce_opts(g));
            emit_report(rep, g.format);
            if (!rep.all_ok) exit_code = 1;
        }
    });

    unsigned census_q = 0;
    unsigned census_s = 0;
    bool emit_list = false;
    CLI::App* search = app.add_subcommand(
        "search-matrices",
        "census of s x s matrices A over GF(q) with A A^t = I, counting the "
        "non-singular-by-columns ones");
    search->fallthrough();
    search->add_option("--q", census_q, "field size (prime power)")->required();
    search->add_option("--s", census_s, "matrix size")->required()->check(CLI::PositiveNumber);
    search->add_flag("--emit", emit_list, "also print the matrices in lexicographic order");
    search->callback([&] { run_search_matrices(census_q, census_s, emit_list, g); });

    std::string mindist_path;
    CLI::App* mindist = app.add_subcommand(
        "mindist",
        "minimum distance of a classical recipe's code: exact within the budget, "
        "designed bound otherwise");
    mindist->fallthrough();
    mindist->add_option("recipe", mindist_path, "recipe JSON file, or - for stdin")->required();
    mindist->callback([&] { run_mindist(mindist_path, g); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        if (dynamic_cast<const CLI::CallForHelp*>(&e) != nullptr ||
            dynamic_cast<const CLI::CallForVersion*>(&e) != nullptr)
            return rc;
        return 2;
    } catch (const stabkit::schema_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const stabkit::precondition_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const stabkit::budget_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}
