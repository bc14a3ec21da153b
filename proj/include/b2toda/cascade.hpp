#pragma once

// Simulator for combining bubbling masses. A state is a pair (gamma, n)
// whose observable total is gamma + 4n; satellite merges grow n and
// collapses move gamma along the orbit through a Weyl word.

#include <algorithm>
#include <array>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "b2toda/orbit.hpp"

namespace b2toda {

struct SatelliteMerge {
    /// Satellite masses; each entry a nonnegative multiple of 4.
    std::array<Integer, 3> k{};
};

/// For J = {i, 3}: which element of the dihedral group acts.
enum class CollapseVariant { identity, r_i, r_3, r_i_r_3, r_3_r_i, r_i_r_3_r_i, r_3_r_i_r_3, r_i3 };

inline constexpr std::array<CollapseVariant, 8> all_collapse_variants{
    CollapseVariant::identity,    CollapseVariant::r_i,         CollapseVariant::r_3,
    CollapseVariant::r_i_r_3,     CollapseVariant::r_3_r_i,     CollapseVariant::r_i_r_3_r_i,
    CollapseVariant::r_3_r_i_r_3, CollapseVariant::r_i3,
};

inline const char* to_string(CollapseVariant v)
{
    switch (v) {
    case CollapseVariant::identity:
        return "identity";
    case CollapseVariant::r_i:
        return "r_i";
    case CollapseVariant::r_3:
        return "r_3";
    case CollapseVariant::r_i_r_3:
        return "r_i_r_3";
    case CollapseVariant::r_3_r_i:
        return "r_3_r_i";
    case CollapseVariant::r_i_r_3_r_i:
        return "r_i_r_3_r_i";
    case CollapseVariant::r_3_r_i_r_3:
        return "r_3_r_i_r_3";
    case CollapseVariant::r_i3:
        return "r_i3";
    }
    return "";
}

inline CollapseVariant parse_collapse_variant(const std::string& name)
{
    for (auto v : all_collapse_variants) {
        if (name == to_string(v)) {
            return v;
        }
    }
    throw Error("parse_error", "unknown collapse variant '" + name + "'");
}

struct Collapse {
    /// Collapsing components, strictly increasing, a nonempty proper subset of {1,2,3}.
    std::vector<int> J;
    /// Required exactly when J = {i,3}.
    std::optional<CollapseVariant> variant;
};

using Move = std::variant<SatelliteMerge, Collapse>;

inline void validate_satellite(const SatelliteMerge& m)
{
    for (const auto& k : m.k) {
        if (k < 0 || floor_mod(k, 4) != 0) {
            throw Error("invalid_satellite", "satellite entry " + k.str() + " is not in 4N u {0}");
        }
    }
}

/// Word of a collapse, in application order.
inline Word collapse_word(const Collapse& c)
{
    const auto& J = c.J;
    if (J.empty() || J.size() > 2 || !std::is_sorted(J.begin(), J.end()) ||
        std::adjacent_find(J.begin(), J.end()) != J.end() || J.front() < 1 || J.back() > 3) {
        throw Error("invalid_move", "collapse set must be a nonempty proper subset of {1,2,3}");
    }
    const bool pair_with_3 = J.size() == 2 && J.back() == 3;
    if (pair_with_3 != c.variant.has_value()) {
        throw Error("invalid_move", pair_with_3 ? "collapse {i,3} needs a variant"
                                                : "only collapse {i,3} takes a variant");
    }
    if (J.size() == 1) {
        return {J.front()};
    }
    if (!pair_with_3) {
        return {2, 1};
    }
    const int i = J.front();
    switch (*c.variant) {
    case CollapseVariant::identity:
        return {};
    case CollapseVariant::r_i:
        return {i};
    case CollapseVariant::r_3:
        return {3};
    case CollapseVariant::r_i_r_3:
        return {3, i};
    case CollapseVariant::r_3_r_i:
        return {i, 3};
    case CollapseVariant::r_i_r_3_r_i:
        return {i, 3, i};
    case CollapseVariant::r_3_r_i_r_3:
        return {3, i, 3};
    case CollapseVariant::r_i3:
        return {3, i, 3, i};
    }
    return {};
}

class CascadeState {
public:
    static CascadeState origin(const Weights& probe = Weights::ones())
    {
        if (probe.is_formal()) {
            throw Error("formal_weights", "cascade probe must be numeric");
        }
        CascadeState s;
        s.probe_ = probe;
        return s;
    }

    const MassVector& gamma_part() const { return gamma_; }
    const std::array<Integer, 3>& lattice_part() const { return lattice_; }
    const Weights& probe() const { return probe_; }
    const std::vector<Move>& history() const { return history_; }

    /// gamma + 4n as a mass vector; the 4n part sits in the offset.
    MassVector total() const
    {
        MassVector t = gamma_;
        for (std::size_t i = 0; i < 3; ++i) {
            t.offset[i] += 4 * lattice_[i];
        }
        return t;
    }

    std::array<Rational, 3> total_at_probe() const { return eval_at(total(), probe_); }

    /// sum_i total_i at the probe.
    Rational total_sum() const
    {
        auto t = total_at_probe();
        return t[0] + t[1] + t[2];
    }

    /// Smallest admissible gain for a collapse that changes gamma: min_i 4 mu_i.
    Rational gain_bound() const
    {
        const auto& p = probe_.values();
        return 4 * std::min({p[0], p[1], p[2]});
    }

    friend CascadeState step(const CascadeState& state, const Move& move);

private:
    CascadeState() : probe_(Weights::ones()) {}

    MassVector gamma_;
    std::array<Integer, 3> lattice_{};
    Weights probe_;
    std::vector<Move> history_;
};

/// A collapse that changes gamma must raise the total at the probe by at
/// least min 4 mu_i; anything less is rejected as non-physical.
inline CascadeState step(const CascadeState& state, const Move& move)
{
    CascadeState next = state;
    if (const auto* merge = std::get_if<SatelliteMerge>(&move)) {
        validate_satellite(*merge);
        for (std::size_t i = 0; i < 3; ++i) {
            next.lattice_[i] += merge->k[i] / 4;
        }
    } else {
        const auto& collapse = std::get<Collapse>(move);
        MassVector moved = apply_word(state.gamma_, collapse_word(collapse));
        if (moved != state.gamma_) {
            next.gamma_ = std::move(moved);
            const Rational gain = next.total_sum() - state.total_sum();
            if (gain < state.gain_bound()) {
                throw Error("non_physical_move", "non-physical move: total at probe changes by " +
                                                     to_compact_string(gain) + ", below the bound " +
                                                     to_compact_string(state.gain_bound()));
            }
        }
    }
    next.history_.push_back(move);
    return next;
}

struct Decomposition {
    MassVector gamma;
    std::array<Integer, 3> lattice;
    /// Descent word from gamma to the origin.
    Word certificate;
};

inline Decomposition decompose(const CascadeState& state)
{
    return {state.gamma_part(), state.lattice_part(), descend_to_origin(state.gamma_part())};
}

inline std::string describe(const Move& move)
{
    std::ostringstream os;
    if (const auto* merge = std::get_if<SatelliteMerge>(&move)) {
        os << "merge " << merge->k[0] << ' ' << merge->k[1] << ' ' << merge->k[2];
    } else {
        const auto& c = std::get<Collapse>(move);
        os << "collapse ";
        for (std::size_t k = 0; k < c.J.size(); ++k) {
            os << (k ? "," : "") << c.J[k];
        }
        if (c.variant) {
            os << ' ' << to_string(*c.variant);
        }
    }
    return os.str();
}

namespace detail {

/// "1,3", "13" and "{1,3}" all name the same set.
inline std::vector<int> parse_index_set(const std::string& text)
{
    std::vector<int> out;
    for (char ch : text) {
        if (ch >= '1' && ch <= '9') {
            out.push_back(ch - '0');
        } else if (ch != ',' && ch != '{' && ch != '}') {
            throw Error("parse_error", "bad collapse set '" + text + "'");
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

/// One move per line: `merge k1 k2 k3` or `collapse J [variant]`. `#`
/// starts a comment.
inline std::vector<Move> parse_scenario(std::istream& in)
{
    std::vector<Move> moves;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) {
            tok.push_back(t);
        }
        if (tok.empty()) {
            continue;
        }
        const std::string where = "line " + std::to_string(lineno) + ": ";
        try {
            if (tok[0] == "merge" && tok.size() == 4) {
                SatelliteMerge m;
                for (std::size_t i = 0; i < 3; ++i) {
                    m.k[i] = parse_integer(tok[i + 1]);
                }
                moves.emplace_back(m);
            } else if (tok[0] == "collapse" && (tok.size() == 2 || tok.size() == 3)) {
                Collapse c;
                c.J = detail::parse_index_set(tok[1]);
                if (tok.size() == 3) {
                    c.variant = parse_collapse_variant(tok[2]);
                }
                moves.emplace_back(c);
            } else {
                throw Error("parse_error", "expected 'merge k1 k2 k3' or 'collapse J [variant]'");
            }
        } catch (const Error& e) {
            throw Error(e.code(), where + e.what());
        }
    }
    return moves;
}

/// States after each move, starting with `start`.
inline std::vector<CascadeState> replay(const CascadeState& start, const std::vector<Move>& moves)
{
    std::vector<CascadeState> trace{start};
    for (const auto& m : moves) {
        trace.push_back(step(trace.back(), m));
    }
    return trace;
}

} // namespace b2toda
