#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "b2toda/b2toda.hpp"

namespace b2toda::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_usage = 2;

struct Config {
    std::string mu = "formal";
    std::size_t max_level = 3;
    std::string max_coefficient;
    std::string output = "json";
    std::uint64_t seed = 1;
    std::size_t trials = 1000;
    bool constrained = false;
};

/// Defaults come from the JSON file named by B2TODA_CONFIG, when set.
Config load_config()
{
    Config c;
    const char* path = std::getenv("B2TODA_CONFIG");
    if (path == nullptr || *path == '\0') {
        return c;
    }
    std::ifstream in(path);
    if (!in) {
        throw Error("parse_error", std::string("cannot open config file ") + path);
    }
    json j;
    try {
        j = json::parse(in);
        if (j.contains("mu")) {
            c.mu = j["mu"].get<std::string>();
        }
        if (j.contains("max_level")) {
            c.max_level = j["max_level"].get<std::size_t>();
        }
        if (j.contains("max_coefficient") && !j["max_coefficient"].is_null()) {
            const auto& v = j["max_coefficient"];
            c.max_coefficient = v.is_string() ? v.get<std::string>() : std::to_string(v.get<std::int64_t>());
        }
        if (j.contains("output")) {
            c.output = j["output"].get<std::string>();
        }
        if (j.contains("seed")) {
            c.seed = j["seed"].get<std::uint64_t>();
        }
        if (j.contains("trials")) {
            c.trials = j["trials"].get<std::size_t>();
        }
        if (j.contains("constrained")) {
            c.constrained = j["constrained"].get<bool>();
        }
    } catch (const json::exception& e) {
        throw Error("parse_error", std::string("bad config file: ") + e.what());
    }
    return c;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        out.push_back(item);
    }
    if (!s.empty() && s.back() == sep) {
        out.emplace_back();
    }
    return out;
}

template <std::size_t N>
std::array<Rational, N> parse_rationals(const std::string& text)
{
    auto parts = split(text, ',');
    if (parts.size() != N) {
        throw Error("parse_error", "expected " + std::to_string(N) + " comma-separated rationals, got '" + text + "'");
    }
    std::array<Rational, N> v;
    for (std::size_t i = 0; i < N; ++i) {
        v[i] = parse_rational(parts[i]);
    }
    return v;
}

Weights parse_mu(const std::string& text, bool constrained)
{
    if (text == "formal") {
        if (constrained) {
            throw Error("invalid_weights", "the weight constraint needs numeric weights");
        }
        return Weights::formal();
    }
    return Weights::numeric(parse_rationals<3>(text), constrained);
}

Weights parse_probe(const std::string& text)
{
    if (text == "formal") {
        throw Error("invalid_weights", "probe weights must be numeric");
    }
    return Weights::numeric(parse_rationals<3>(text));
}

/// "c11,c12,c13;c21,c22,c23;c31,c32,c33".
MassVector parse_sigma(const std::string& text)
{
    auto rows = split(text, ';');
    if (rows.size() != 3) {
        throw Error("parse_error", "sigma needs three ';'-separated rows, got '" + text + "'");
    }
    MassVector v;
    for (std::size_t i = 0; i < 3; ++i) {
        auto cells = split(rows[i], ',');
        if (cells.size() != 3) {
            throw Error("parse_error", "sigma row " + std::to_string(i + 1) + " needs three entries");
        }
        for (std::size_t j = 0; j < 3; ++j) {
            v.coeff[i][j] = parse_integer(cells[j]);
        }
    }
    return v;
}

std::optional<Integer> parse_bound(const std::string& text)
{
    if (text.empty()) {
        return std::nullopt;
    }
    Integer b = parse_integer(text);
    if (b < 0) {
        throw Error("domain_error", "max-coefficient must be nonnegative");
    }
    return b;
}

json integer_json(const Integer& v)
{
    if (fits_int64(v)) {
        return json(static_cast<std::int64_t>(v));
    }
    return json(v.str());
}

template <std::size_t N>
json coeff_json(const BasicMassVector<N>& sigma)
{
    json rows = json::array();
    for (const auto& row : sigma.coeff) {
        json r = json::array();
        for (const auto& c : row) {
            r.push_back(integer_json(c));
        }
        rows.push_back(r);
    }
    return rows;
}

template <typename Range>
json integers_json(const Range& values)
{
    json a = json::array();
    for (const auto& v : values) {
        a.push_back(integer_json(Integer(v)));
    }
    return a;
}

template <typename Range>
json rationals_json(const Range& values)
{
    json a = json::array();
    for (const auto& v : values) {
        a.push_back(to_fraction_string(v));
    }
    return a;
}

std::string word_digits(const Word& w)
{
    std::string s;
    for (int g : w) {
        s += static_cast<char>('0' + g);
    }
    return s;
}

json closed_form_json(const ClosedFormId& id)
{
    return json::array({id.ell, integer_json(id.m1), integer_json(id.m2)});
}

json orbit_record(const MassVector& sigma, std::size_t level, const Word& word, const Weights& w)
{
    json r;
    r["coeff"] = coeff_json(sigma);
    r["level"] = level;
    r["word"] = word;
    const auto id = invert_to_closed_form(sigma);
    const auto t = type_of_family(id.ell);
    r["type"] = json::array({t.m1, t.m2});
    r["closed_form"] = closed_form_json(id);
    if (w.is_numeric()) {
        r["value"] = rationals_json(eval_at(sigma, w));
    }
    return r;
}

void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

void emit_error(std::ostream& out, const std::string& code, const std::string& detail)
{
    emit(out, json{{"error", code}, {"detail", detail}});
}

int exit_code_for(const Error& e)
{
    static const std::set<std::string> negative{"not_in_gamma", "not_gamma_type", "not_representable",
                                                "non_physical_move"};
    return negative.count(e.code()) ? exit_negative : exit_usage;
}

int cmd_orbit(const Config& c, std::ostream& out)
{
    const Weights w = parse_mu(c.mu, c.constrained);
    if (c.output != "json" && c.output != "csv") {
        throw Error("parse_error", "output must be json or csv");
    }
    const OrbitBounds bounds{c.max_level, parse_bound(c.max_coefficient)};
    const auto store = enumerate(bounds);
    json meta;
    meta["count"] = store.size();
    meta["truncated"] = store.truncated();
    meta["max_level"] = c.max_level;
    meta["max_coefficient"] = bounds.max_coefficient ? integer_json(*bounds.max_coefficient) : json(nullptr);

    if (c.output == "json") {
        for (const auto& [sigma, e] : store) {
            emit(out, orbit_record(sigma, e.level, e.word, w));
        }
        emit(out, json{{"metadata", meta}});
        return exit_ok;
    }

    out << "level,word";
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
            out << ",c" << i << j;
        }
    }
    out << ",type_m1,type_m2,ell,m1,m2";
    if (w.is_numeric()) {
        out << ",sigma1,sigma2,sigma3";
    }
    out << '\n';
    for (const auto& [sigma, e] : store) {
        const auto id = invert_to_closed_form(sigma);
        const auto t = type_of_family(id.ell);
        out << e.level << ',' << word_digits(e.word);
        for (const auto& row : sigma.coeff) {
            for (const auto& x : row) {
                out << ',' << x;
            }
        }
        out << ',' << t.m1 << ',' << t.m2 << ',' << id.ell << ',' << id.m1 << ',' << id.m2;
        if (w.is_numeric()) {
            for (const auto& v : eval_at(sigma, w)) {
                out << ',' << to_compact_string(v);
            }
        }
        out << '\n';
    }
    out << "# count=" << store.size() << " truncated=" << (store.truncated() ? "true" : "false")
        << " max_level=" << c.max_level << " max_coefficient="
        << (bounds.max_coefficient ? bounds.max_coefficient->str() : std::string("none")) << '\n';
    return exit_ok;
}

int cmd_check(const std::string& sigma_text, std::ostream& out)
{
    const auto cert = is_member_gamma_N(parse_sigma(sigma_text));
    json r;
    r["member"] = cert.member();
    r["nonneg"] = cert.nonneg;
    r["div4"] = cert.div4;
    r["quadric_zero"] = cert.quadric_zero;
    emit(out, r);
    return cert.member() ? exit_ok : exit_negative;
}

int cmd_descend(const std::string& sigma_text, const std::string& probe, std::ostream& out)
{
    emit(out, json{{"word", descend_to_origin(parse_sigma(sigma_text), parse_probe(probe))}});
    return exit_ok;
}

int cmd_closedform(const std::vector<std::string>& ids, const Config& c, std::ostream& out)
{
    const Weights w = parse_mu(c.mu, c.constrained);
    const Integer ell = parse_integer(ids[0]);
    if (ell < 1 || ell > 8) {
        throw Error("inadmissible_id", "family index must lie in 1..8");
    }
    const ClosedFormId id{static_cast<int>(ell), parse_integer(ids[1]), parse_integer(ids[2])};
    const MassVector sigma = closed_form_eval(id);
    const Word word = inverse_word(descend_to_origin(sigma));
    emit(out, orbit_record(sigma, word.size(), word, w));
    return exit_ok;
}

int cmd_type(const std::string& sigma_text, std::ostream& out)
{
    const auto t = type_of(parse_sigma(sigma_text));
    emit(out, json{{"type", json::array({t.m1, t.m2})}});
    return exit_ok;
}

int cmd_sinh(std::size_t max_level, const std::string& mu, std::ostream& out)
{
    std::optional<BasicWeights<2>> w;
    if (mu != "formal") {
        w = BasicWeights<2>::numeric(parse_rationals<2>(mu));
    }
    const auto store = sinh_orbit(max_level);
    for (const auto& [sigma, e] : store) {
        json r;
        r["coeff"] = coeff_json(sigma);
        r["level"] = e.level;
        r["word"] = e.word;
        r["m"] = integer_json(*sinh_parameter(sigma));
        if (w) {
            r["value"] = rationals_json(eval_at(sigma, *w));
        }
        emit(out, r);
    }
    emit(out, json{{"metadata", {{"count", store.size()}, {"truncated", store.truncated()}, {"max_level", max_level}}}});
    return exit_ok;
}

json pairs_json(const std::set<RationalPair>& tuples)
{
    json a = json::array();
    for (const auto& [u, v] : tuples) {
        a.push_back(json::array({to_fraction_string(u), to_fraction_string(v)}));
    }
    return a;
}

int cmd_weyl2(const std::string& kind, const std::string& part, const std::string& alpha,
              const std::string& weights, std::ostream& out)
{
    if (!part.empty()) {
        const auto a = parse_rationals<2>(alpha);
        json r;
        r["part"] = part;
        if (part == "a") {
            const auto t = appendix_part_a(a[0], a[1]);
            r["tuples"] = pairs_json({t});
        } else if (part == "c") {
            r["tuples"] = pairs_json(appendix_part_c(a[0], a[1]));
        } else if (part == "b") {
            const auto cert = appendix_part_b(a[0], a[1]);
            r["tuples"] = pairs_json(cert.tuples);
            r["nonneg"] = cert.nonneg;
            r["div4"] = cert.div4;
            r["holds"] = cert.holds();
            emit(out, r);
            return cert.holds() ? exit_ok : exit_negative;
        } else {
            throw Error("parse_error", "part must be a, b or c");
        }
        emit(out, r);
        return exit_ok;
    }
    const SubsystemKind k = parse_subsystem(kind);
    std::optional<std::array<Rational, 2>> w;
    if (!weights.empty()) {
        w = parse_rationals<2>(weights);
    }
    const auto orbit = finite_orbit(k);
    for (const auto& e : orbit) {
        json r;
        r["coeff"] = coeff_json(e.sigma);
        r["level"] = e.level;
        r["word"] = e.word;
        if (w) {
            const auto v = evaluate_pair(e.sigma, (*w)[0], (*w)[1]);
            r["value"] = json::array({to_fraction_string(v.first), to_fraction_string(v.second)});
        }
        emit(out, r);
    }
    emit(out, json{{"metadata", {{"subsystem", to_string(k)}, {"count", orbit.size()}}}});
    return exit_ok;
}

json state_json(std::size_t index, const std::string& move, const CascadeState& s)
{
    json r;
    r["step"] = index;
    r["move"] = move;
    r["gamma"] = coeff_json(s.gamma_part());
    r["lattice"] = integers_json(s.lattice_part());
    r["total"] = rationals_json(s.total_at_probe());
    return r;
}

int cmd_cascade(const std::string& path, const std::string& probe, std::ostream& out)
{
    std::ifstream in(path);
    if (!in) {
        throw Error("parse_error", "cannot open scenario file " + path);
    }
    const auto moves = parse_scenario(in);
    CascadeState state = CascadeState::origin(parse_probe(probe));
    emit(out, state_json(0, "start", state));
    for (std::size_t k = 0; k < moves.size(); ++k) {
        state = step(state, moves[k]);
        emit(out, state_json(k + 1, describe(moves[k]), state));
    }
    const auto d = decompose(state);
    json r;
    r["gamma"] = coeff_json(d.gamma);
    r["lattice"] = integers_json(d.lattice);
    r["certificate"] = d.certificate;
    emit(out, json{{"decomposition", r}});
    return exit_ok;
}

int cmd_relations(const Config& c, std::int64_t bound, std::ostream& out)
{
    const auto report = check_relations(c.trials, c.seed, bound);
    json rel = json::array();
    for (const auto& r : report.relations) {
        json ce = json::array();
        for (const auto& v : r.counterexamples) {
            ce.push_back(json{{"coeff", coeff_json(v)}, {"offset", integers_json(v.offset)}});
        }
        rel.push_back(json{{"name", r.name}, {"failures", r.counterexamples.size()}, {"counterexamples", ce}});
    }
    json out_j;
    out_j["trials"] = report.trials;
    out_j["seed"] = c.seed;
    out_j["ok"] = report.ok();
    out_j["relations"] = rel;
    emit(out, out_j);
    return report.ok() ? exit_ok : exit_negative;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Config c;
    try {
        c = load_config();
    } catch (const Error& e) {
        emit_error(out, e.code(), e.what());
        return exit_usage;
    }

    CLI::App app{"Exact orbit, closed-form and cascade tools for the B2^(1) affine Toda mass set", "b2toda"};
    app.require_subcommand(1);

    auto* orbit = app.add_subcommand("orbit", "Enumerate the orbit of the origin");
    orbit->add_option("--max-level", c.max_level, "Largest word length");
    orbit->add_option("--max-coefficient", c.max_coefficient, "Largest allowed coefficient");
    orbit->add_option("--mu", c.mu, "'formal' or three rationals 'a,b,c'");
    orbit->add_option("--output", c.output, "json or csv");
    orbit->add_flag("--constrained", c.constrained, "Require mu1+mu2+2mu3=4");

    std::string sigma;
    std::string probe = "1,1,1";
    auto* check = app.add_subcommand("check", "Test membership in Gamma_N");
    check->add_option("sigma", sigma, "Coefficient matrix 'c11,c12,c13;c21,...'")->required();

    auto* descend = app.add_subcommand("descend", "Word taking sigma to the origin");
    descend->add_option("sigma", sigma, "Coefficient matrix 'c11,c12,c13;c21,...'")->required();
    descend->add_option("--probe", probe, "Probe weights 'a,b,c'");

    std::vector<std::string> ids;
    auto* closedform = app.add_subcommand("closedform", "Evaluate a closed-form family member");
    closedform->add_option("id", ids, "ell m1 m2")->required()->expected(3);
    closedform->add_option("--mu", c.mu, "'formal' or three rationals 'a,b,c'");
    closedform->add_flag("--constrained", c.constrained, "Require mu1+mu2+2mu3=4");

    auto* type = app.add_subcommand("type", "Mod-4 type of sigma");
    type->add_option("sigma", sigma, "Coefficient matrix 'c11,c12,c13;c21,...'")->required();

    std::size_t sinh_level = 10;
    std::string sinh_mu = "formal";
    auto* sinh = app.add_subcommand("sinh", "Orbit of the rank-1 reduction");
    sinh->add_option("--max-level", sinh_level, "Largest word length");
    sinh->add_option("--mu", sinh_mu, "'formal' or two rationals 'a,b'");

    std::string kind = "appendix_uv";
    std::string part;
    std::string alpha = "0,0";
    std::string weights;
    auto* weyl2 = app.add_subcommand("weyl2", "Finite rank-2 orbits and appendix tables");
    weyl2->add_option("--subsystem", kind, "pair_13, pair_23, pair_12 or appendix_uv");
    weyl2->add_option("--weights", weights, "Evaluate at two rationals 'w1,w2'");
    weyl2->add_option("--part", part, "Appendix table a, b or c");
    weyl2->add_option("--alpha", alpha, "Strengths 'a1,a2' for --part");

    std::string scenario;
    auto* cascade = app.add_subcommand("cascade", "Replay a scenario file");
    cascade->add_option("scenario", scenario, "Scenario file")->required();
    cascade->add_option("--probe", probe, "Probe weights 'a,b,c'");

    std::int64_t bound = 100;
    auto* relations = app.add_subcommand("relations", "Check the group relations on random vectors");
    relations->add_option("--trials", c.trials, "Number of random vectors");
    relations->add_option("--seed", c.seed, "RNG seed");
    relations->add_option("--bound", bound, "Entries drawn from [-bound, bound]");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        emit_error(out, "usage", e.what());
        return exit_usage;
    }

    try {
        if (orbit->parsed()) {
            return cmd_orbit(c, out);
        }
        if (check->parsed()) {
            return cmd_check(sigma, out);
        }
        if (descend->parsed()) {
            return cmd_descend(sigma, probe, out);
        }
        if (closedform->parsed()) {
            return cmd_closedform(ids, c, out);
        }
        if (type->parsed()) {
            return cmd_type(sigma, out);
        }
        if (sinh->parsed()) {
            return cmd_sinh(sinh_level, sinh_mu, out);
        }
        if (weyl2->parsed()) {
            return cmd_weyl2(kind, part, alpha, weights, out);
        }
        if (cascade->parsed()) {
            return cmd_cascade(scenario, probe, out);
        }
        if (relations->parsed()) {
            return cmd_relations(c, bound, out);
        }
    } catch (const Error& e) {
        emit_error(out, e.code(), e.what());
        return exit_code_for(e);
    }
    return exit_usage;
}

} // namespace b2toda::cli
