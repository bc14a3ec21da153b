#pragma once

// Finite rank-2 Weyl orbits: the pairs {1,3}, {2,3}, {1,2} of the affine
// system and the two-component appendix system, plus the appendix tables.

#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "b2toda/orbit.hpp"

namespace b2toda {

enum class SubsystemKind { pair_13, pair_23, pair_12, appendix_uv };

inline const char* to_string(SubsystemKind k)
{
    switch (k) {
    case SubsystemKind::pair_13:
        return "pair_13";
    case SubsystemKind::pair_23:
        return "pair_23";
    case SubsystemKind::pair_12:
        return "pair_12";
    case SubsystemKind::appendix_uv:
        return "appendix_uv";
    }
    return "";
}

inline SubsystemKind parse_subsystem(const std::string& name)
{
    for (auto k : {SubsystemKind::pair_13, SubsystemKind::pair_23, SubsystemKind::pair_12,
                   SubsystemKind::appendix_uv}) {
        if (name == to_string(k)) {
            return k;
        }
    }
    throw Error("parse_error", "unknown subsystem '" + name + "'");
}

/// Weights (w1, w2) are the two weights of the active pair.
inline const ReflectionSystem<2>& subsystem(SubsystemKind kind)
{
    static const ReflectionSystem<2> b2_pair(CartanMatrix<2>(RationalMatrix<2>{{
                                                 {Rational(1), Rational(-1)},
                                                 {Rational(-1, 2), Rational(1)},
                                             }}),
                                             {Integer(1), Integer(2)});
    static const ReflectionSystem<2> a1a1(CartanMatrix<2>(RationalMatrix<2>{{
                                              {Rational(1), Rational(0)},
                                              {Rational(0), Rational(1)},
                                          }}),
                                          {Integer(1), Integer(1)});
    static const ReflectionSystem<2> uv(CartanMatrix<2>(RationalMatrix<2>{{
                                            {Rational(1), Rational(-1, 2)},
                                            {Rational(-1), Rational(1)},
                                        }}),
                                        {Integer(2), Integer(1)});
    switch (kind) {
    case SubsystemKind::pair_13:
    case SubsystemKind::pair_23:
        return b2_pair;
    case SubsystemKind::pair_12:
        return a1a1;
    case SubsystemKind::appendix_uv:
        return uv;
    }
    return uv;
}

using OrbitElement2 = BasicOrbitElement<2>;

/// Whole orbit of the origin, ordered by level then canonically, so the
/// longest element is last.
inline std::vector<OrbitElement2> finite_orbit(SubsystemKind kind)
{
    // Dihedral of order 8 at most: level 4 is the deepest.
    auto store = enumerate_orbit(subsystem(kind), OrbitBounds{16, std::nullopt});
    if (store.truncated()) {
        throw Error("domain_error", "rank-2 orbit did not close");
    }
    std::vector<OrbitElement2> out;
    for (const auto& [sigma, e] : store) {
        out.push_back(e);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const OrbitElement2& a, const OrbitElement2& b) { return a.level < b.level; });
    return out;
}

/// Generator indices of the pair in the affine system.
inline std::array<std::size_t, 2> pair_components(SubsystemKind kind)
{
    switch (kind) {
    case SubsystemKind::pair_13:
        return {0, 2};
    case SubsystemKind::pair_23:
        return {1, 2};
    case SubsystemKind::pair_12:
        return {0, 1};
    case SubsystemKind::appendix_uv:
        break;
    }
    throw Error("domain_error", "appendix_uv is not a subsystem of the affine system");
}

/// Places a pair vector into three components, the untouched one zero.
inline MassVector embed(SubsystemKind kind, const MassVector2& v)
{
    const auto idx = pair_components(kind);
    MassVector out;
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            out.coeff[idx[a]][idx[b]] = v.coeff[a][b];
        }
        out.offset[idx[a]] = v.offset[a];
    }
    return out;
}

using RationalPair = std::pair<Rational, Rational>;

/// (s_u1, s_u2) = (s_u, s_v) / 2.
inline RationalPair halve(const RationalPair& p) { return {p.first / 2, p.second / 2}; }

inline RationalPair evaluate_pair(const MassVector2& v, const Rational& w1, const Rational& w2)
{
    auto r = substitute(v, {w1, w2});
    return {r[0], r[1]};
}

namespace detail {

inline void check_strengths(const Rational& a1, const Rational& a2)
{
    if (a1 <= -1 || a2 <= -1) {
        throw Error("domain_error", "strengths must exceed -1");
    }
}

inline bool is_natural(const Rational& a) { return is_integral(a) && a >= 0; }

} // namespace detail

inline RationalPair appendix_part_a(const Rational& a1, const Rational& a2)
{
    detail::check_strengths(a1, a2);
    return {8 * a1 + 4 * a2 + 12, 8 * a1 + 8 * a2 + 16};
}

/// The eight tuples as listed, duplicates removed by the set.
inline std::set<RationalPair> appendix_part_c(const Rational& a1, const Rational& a2)
{
    detail::check_strengths(a1, a2);
    return {
        {0, 0},
        {4 * a1, 0},
        {0, 4 * a2},
        {4 * a1, 8 * a1 + 4 * a2},
        {4 * a1 + 4 * a2, 4 * a2},
        {4 * a1 + 4 * a2, 8 * a1 + 8 * a2},
        {8 * a1 + 4 * a2, 8 * a1 + 4 * a2},
        {8 * a1 + 4 * a2, 8 * a1 + 8 * a2},
    };
}

struct AppendixCertificate {
    std::set<RationalPair> tuples;
    bool nonneg = false;
    bool div4 = false;

    bool holds() const { return nonneg && div4; }
};

/// For natural strengths every part-(c) tuple is a pair of nonnegative
/// multiples of 4.
inline AppendixCertificate appendix_part_b(const Rational& a1, const Rational& a2)
{
    detail::check_strengths(a1, a2);
    if (!detail::is_natural(a1) || !detail::is_natural(a2)) {
        throw Error("domain_error", "part (b) needs strengths in N u {0}");
    }
    AppendixCertificate cert;
    cert.tuples = appendix_part_c(a1, a2);
    cert.nonneg = true;
    cert.div4 = true;
    for (const auto& [u, v] : cert.tuples) {
        for (const Rational* x : {&u, &v}) {
            cert.nonneg = cert.nonneg && *x >= 0;
            cert.div4 = cert.div4 && is_integral(*x / 4);
        }
    }
    return cert;
}

/// Part (c) set obtained from the orbit rather than the transcribed list.
inline std::set<RationalPair> appendix_orbit_values(const Rational& w1, const Rational& w2)
{
    std::set<RationalPair> out;
    for (const auto& e : finite_orbit(SubsystemKind::appendix_uv)) {
        out.insert(evaluate_pair(e.sigma, w1, w2));
    }
    return out;
}

} // namespace b2toda
