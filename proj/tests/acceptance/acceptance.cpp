// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "anchors.hpp"
#include "b2toda/b2toda.hpp"
#include "cli.hpp"

using namespace b2toda;
using json = nlohmann::json;

namespace {

constexpr double ac1_limit_s = 1.0;
constexpr double ac4_limit_s = 5.0;
constexpr double ac5_limit_s = 30.0;
constexpr double ac8_limit_s = 1.0;
constexpr double ac10_limit_s = 10.0;

constexpr int closed_form_range = 20;
constexpr std::size_t relation_trials = 1000;
constexpr std::int64_t relation_bound = 100;
constexpr std::uint64_t relation_seed = 20240601;
constexpr std::size_t sinh_level = 100;
constexpr int appendix_samples = 100;
constexpr std::uint64_t appendix_seed = 7;
constexpr int cascade_sequences = 500;
constexpr int cascade_max_length = 12;
constexpr std::uint64_t cascade_seed = 99;

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(const char* id, const char* title, const std::function<Outcome()>& body)
{
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) {
        ++failures;
    }
    std::cout << id << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << title << ": " << o.detail << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s, double limit)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f s (limit %.0f s)", s, limit);
    return buf;
}

MassVector from_rows(const std::array<int, 9>& c)
{
    MassVector v;
    for (std::size_t i = 0; i < 9; ++i) {
        v.coeff[i / 3][i % 3] = c[i];
    }
    return v;
}

MassVector from_json(const json& coeff)
{
    MassVector v;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            const auto& x = coeff[i][j];
            v.coeff[i][j] = x.is_string() ? Integer(x.get<std::string>()) : Integer(x.get<std::int64_t>());
        }
    }
    return v;
}

/// Runs the command-line tool in process and returns its records.
std::vector<json> cli_records(const std::vector<std::string>& args, int& code)
{
    std::ostringstream out;
    std::ostringstream err;
    code = cli::run(args, out, err);
    std::vector<json> records;
    std::istringstream lines(out.str());
    for (std::string line; std::getline(lines, line);) {
        records.push_back(json::parse(line));
    }
    return records;
}

std::vector<ClosedFormId> admissible_ids(int range)
{
    std::vector<ClosedFormId> out;
    for (int ell = 1; ell <= 8; ++ell) {
        for (int m1 = -range; m1 <= range; ++m1) {
            for (int m2 = -range; m2 <= range; ++m2) {
                ClosedFormId id{ell, m1, m2};
                if (is_admissible(id)) {
                    out.push_back(id);
                }
            }
        }
    }
    return out;
}

Outcome ac1_tree()
{
    const auto t0 = std::chrono::steady_clock::now();
    int code = 0;
    auto records = cli_records({"orbit", "--max-level", "3"}, code);
    if (code != 0 || records.empty() || !records.back().contains("metadata")) {
        return {false, "orbit command failed"};
    }
    records.pop_back();
    std::map<MassVector, std::size_t> levels;
    for (const auto& r : records) {
        if (!levels.emplace(from_json(r["coeff"]), r["level"].get<std::size_t>()).second) {
            return {false, "duplicate record in the orbit dump"};
        }
    }
    const double elapsed = seconds_since(t0);

    std::set<MassVector> expected_shallow;
    for (const auto& a : testing::tree_anchors()) {
        const auto sigma = from_rows(a.coeff);
        auto it = levels.find(sigma);
        if (it == levels.end()) {
            return {false, "missing tree element at level " + std::to_string(a.level)};
        }
        if (it->second != a.level) {
            return {false, "tree element at level " + std::to_string(it->second) + ", expected " +
                               std::to_string(a.level)};
        }
        if (a.level <= 2) {
            expected_shallow.insert(sigma);
        }
    }
    std::set<MassVector> shallow;
    for (const auto& [sigma, level] : levels) {
        if (level <= 2) {
            shallow.insert(sigma);
        }
    }
    if (shallow != expected_shallow) {
        return {false, "levels 0..2 hold " + std::to_string(shallow.size()) + " elements, expected " +
                           std::to_string(expected_shallow.size())};
    }
    const bool fast = elapsed < ac1_limit_s;
    return {fast, "10 tree elements at expected levels, levels 0..2 exactly the 9 tree entries, " +
                      std::to_string(levels.size()) + " distinct records, " + fmt_seconds(elapsed, ac1_limit_s)};
}

Outcome ac2_types()
{
    int ok = 0;
    for (const auto& a : testing::tree_anchors()) {
        if (type_of(from_rows(a.coeff)) == a.type) {
            ++ok;
        }
    }
    return {ok == 10, std::to_string(ok) + "/10 types match"};
}

Outcome ac3_anchors()
{
    int ok = 0;
    for (const auto& a : testing::tree_anchors()) {
        const ClosedFormId id{a.ell, a.m1, a.m2};
        const auto sigma = from_rows(a.coeff);
        if (closed_form_eval(id) == sigma && invert_to_closed_form(sigma) == id) {
            ++ok;
        }
    }
    return {ok == 10, std::to_string(ok) + "/10 anchor points round-trip"};
}

Outcome ac4_commuting_square()
{
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t cases = 0;
    std::size_t bad = 0;
    for (const auto& id : admissible_ids(closed_form_range)) {
        const auto sigma = closed_form_eval(id);
        for (int i = 1; i <= 3; ++i) {
            ++cases;
            if (reflect(sigma, i) != closed_form_eval(transition(id, i))) {
                ++bad;
            }
        }
    }
    const double elapsed = seconds_since(t0);
    return {bad == 0 && elapsed < ac4_limit_s, std::to_string(cases) + " cases, " + std::to_string(bad) +
                                                   " mismatches, " + fmt_seconds(elapsed, ac4_limit_s)};
}

Outcome ac5_invariants()
{
    const auto t0 = std::chrono::steady_clock::now();
    int code = 0;
    auto records = cli_records({"orbit", "--max-level", "8", "--max-coefficient", "4000"}, code);
    if (code != 0 || records.empty()) {
        return {false, "orbit command failed"};
    }
    records.pop_back();
    std::size_t bad = 0;
    for (const auto& r : records) {
        const auto sigma = from_json(r["coeff"]);
        const auto cert = is_member_gamma_N(sigma);
        if (!cert.member() || !apply_word(sigma, descend_to_origin(sigma)).is_zero()) {
            ++bad;
        }
    }
    const double elapsed = seconds_since(t0);
    return {bad == 0 && elapsed < ac5_limit_s, std::to_string(records.size()) + " elements, " +
                                                   std::to_string(bad) + " failures, " +
                                                   fmt_seconds(elapsed, ac5_limit_s)};
}

Outcome ac6_relations()
{
    const auto r = check_relations(relation_trials, relation_seed, relation_bound);
    std::size_t bad = 0;
    for (const auto& rel : r.relations) {
        bad += rel.counterexamples.size();
    }
    return {bad == 0 && r.relations.size() == 6,
            std::to_string(r.trials) + " vectors x " + std::to_string(r.relations.size()) + " relations, " +
                std::to_string(bad) + " failures"};
}

Outcome ac7_special_case()
{
    std::size_t cases = 0;
    std::size_t bad = 0;
    for (const auto& id : admissible_ids(closed_form_range)) {
        ++cases;
        const auto v = eval_at(closed_form_eval(id), Weights::ones());
        const auto t = special_case_table(id.m1, id.m2);
        for (std::size_t i = 0; i < 3; ++i) {
            if (v[i] != Rational(t[i])) {
                ++bad;
                break;
            }
        }
    }
    return {bad == 0, std::to_string(cases) + " pairs, " + std::to_string(bad) + " mismatches"};
}

Outcome ac8_sinh()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto orbit = sinh_orbit(sinh_level);
    std::set<MassVector2> got;
    std::set<std::pair<Rational, Rational>> values;
    for (const auto& [sigma, e] : orbit) {
        if (!sinh_residual(sigma).is_zero()) {
            return {false, "rank-1 quadric fails"};
        }
        got.insert(sigma);
        const auto v = substitute(sigma, {Rational(1), Rational(1)});
        values.insert({v[0], v[1]});
    }
    std::set<MassVector2> family;
    std::set<std::pair<Rational, Rational>> expected_values;
    const int L = static_cast<int>(sinh_level);
    for (int m = -L; m <= L; ++m) {
        family.insert(sinh_closed_form(m));
        expected_values.insert({Rational(2 * m * (m + 1)), Rational(2 * m * (m - 1))});
    }
    const double elapsed = seconds_since(t0);
    const bool ok = got == family && values == expected_values && elapsed < ac8_limit_s;
    return {ok, std::to_string(got.size()) + " orbit elements vs " + std::to_string(family.size()) +
                    " family members (|m| <= " + std::to_string(L) + "), unit-weight values " +
                    (values == expected_values ? "match" : "differ") + ", " + fmt_seconds(elapsed, ac8_limit_s)};
}

Outcome ac9_appendix()
{
    const auto orbit = finite_orbit(SubsystemKind::appendix_uv);
    if (orbit.size() != 8) {
        return {false, "orbit has " + std::to_string(orbit.size()) + " elements"};
    }
    const auto longest = orbit.back().sigma;
    std::mt19937_64 rng(appendix_seed);
    std::uniform_int_distribution<int> num(1, 400);
    std::uniform_int_distribution<int> den(1, 40);
    int bad = 0;
    for (int t = 0; t < appendix_samples; ++t) {
        const Rational a1 = Rational(num(rng), den(rng)) - 1;
        const Rational a2 = Rational(num(rng), den(rng)) - 1;
        if (appendix_orbit_values(a1, a2) != appendix_part_c(a1, a2) ||
            evaluate_pair(longest, 1 + a1, 1 + a2) != appendix_part_a(a1, a2)) {
            ++bad;
        }
    }
    return {bad == 0, "8 elements; " + std::to_string(appendix_samples) + " random strengths, " +
                          std::to_string(bad) + " mismatches with parts (a) and (c)"};
}

Outcome ac10_cascade()
{
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(cascade_seed);
    std::uniform_int_distribution<int> length(1, cascade_max_length);
    std::uniform_int_distribution<int> kind(0, 6);
    std::uniform_int_distribution<int> k4(0, 3);
    std::uniform_int_distribution<std::size_t> variant(0, 7);
    const std::vector<std::vector<int>> sets{{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}};

    std::size_t accepted = 0;
    std::size_t decreasing = 0;
    std::size_t violations = 0;
    for (int run = 0; run < cascade_sequences; ++run) {
        auto state = CascadeState::origin();
        const int n = length(rng);
        for (int k = 0; k < n; ++k) {
            Move move;
            const int choice = kind(rng);
            if (choice == 6) {
                move = SatelliteMerge{{Integer(4 * k4(rng)), Integer(4 * k4(rng)), Integer(4 * k4(rng))}};
            } else {
                Collapse c{sets[static_cast<std::size_t>(choice)], std::nullopt};
                if (c.J.size() == 2 && c.J.back() == 3) {
                    c.variant = all_collapse_variants[variant(rng)];
                }
                move = c;
            }

            // Predicted change of the total at the probe, computed from the move alone.
            Rational predicted = 0;
            if (const auto* c = std::get_if<Collapse>(&move)) {
                const auto moved = apply_word(state.gamma_part(), collapse_word(*c));
                const auto a = eval_at(moved, state.probe());
                const auto b = eval_at(state.gamma_part(), state.probe());
                predicted = (a[0] + a[1] + a[2]) - (b[0] + b[1] + b[2]);
            }

            try {
                const auto next = step(state, move);
                if (predicted < 0) {
                    ++violations;
                }
                const Rational gain = next.total_sum() - state.total_sum();
                if (next.gamma_part() != state.gamma_part() && gain < state.gain_bound()) {
                    ++violations;
                }
                const auto d = decompose(next);
                const auto total = next.total_at_probe();
                const auto g = eval_at(d.gamma, next.probe());
                for (std::size_t i = 0; i < 3; ++i) {
                    if (total[i] != g[i] + 4 * Rational(d.lattice[i])) {
                        ++violations;
                    }
                }
                if (!is_member_gamma_N(d.gamma).member() || !apply_word(d.gamma, d.certificate).is_zero()) {
                    ++violations;
                }
                state = next;
                ++accepted;
            } catch (const Error& e) {
                if (e.code() != "non_physical_move") {
                    ++violations;
                }
                if (predicted < 0) {
                    ++decreasing;
                }
            }
        }
    }
    const double elapsed = seconds_since(t0);
    return {violations == 0 && decreasing > 0 && elapsed < ac10_limit_s,
            std::to_string(cascade_sequences) + " sequences, " + std::to_string(accepted) + " legal moves, " +
                std::to_string(decreasing) + " energy-decreasing collapses rejected, " +
                std::to_string(violations) + " violations, " + fmt_seconds(elapsed, ac10_limit_s)};
}

} // namespace

int main()
{
    report("AC1", "tree reproduction", ac1_tree);
    report("AC2", "type table", ac2_types);
    report("AC3", "closed-form anchor points", ac3_anchors);
    report("AC4", "commuting square", ac4_commuting_square);
    report("AC5", "quadric and lattice invariants", ac5_invariants);
    report("AC6", "group presentation", ac6_relations);
    report("AC7", "unit-weight specialization", ac7_special_case);
    report("AC8", "sinh-Gordon orbit", ac8_sinh);
    report("AC9", "appendix tables", ac9_appendix);
    report("AC10", "cascade soundness", ac10_cascade);
    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
