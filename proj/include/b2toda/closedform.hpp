#pragma once

// The eight closed-form families F^(l)(m1, m2), the mod-4 type of a mass
// vector, inversion to (l, m1, m2), and how each reflection moves between
// families.

#include <array>
#include <cstddef>
#include <optional>
#include <string>

#include "b2toda/algebra.hpp"

namespace b2toda {

struct TypeTag {
    int m1 = 0;
    int m2 = 0;

    friend bool operator==(const TypeTag&, const TypeTag&) = default;
};

struct ClosedFormId {
    int ell = 1;
    Integer m1 = 0;
    Integer m2 = 0;

    friend bool operator==(const ClosedFormId&, const ClosedFormId&) = default;
};

namespace detail {

/// Family l (1-based) lives in residue class family_types[l-1].
inline constexpr std::array<TypeTag, 8> family_types{{
    {0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}, {2, 3}, {3, 2}, {3, 3},
}};

/// Entry f_ij = (a m1^2 + b m1 + c m2^2 + d m2 + e) / 4, stored as {a,b,c,d,e}.
using QuarterPoly = std::array<int, 5>;
using FamilyTable = std::array<std::array<QuarterPoly, 3>, 3>;

inline constexpr std::array<FamilyTable, 8> family_tables{{
    {{{{{1, 0, 1, 0, 0}, {1, 4, 1, -4, 0}, {2, 8, 2, 0, 0}}},
      {{{1, -4, 1, 4, 0}, {1, 0, 1, 0, 0}, {2, 0, 2, 8, 0}}},
      {{{1, -4, 1, 0, 0}, {1, 0, 1, -4, 0}, {2, 0, 2, 0, 0}}}}},
    {{{{{1, 0, 1, -2, 1}, {1, 4, 1, 2, -3}, {2, 8, 2, -4, 2}}},
      {{{1, -4, 1, 2, -3}, {1, 0, 1, 6, 9}, {2, 0, 2, 4, -6}}},
      {{{1, -4, 1, -2, 1}, {1, 0, 1, 2, -3}, {2, 0, 2, -4, 2}}}}},
    {{{{{1, 6, 1, 0, 9}, {1, 2, 1, -4, -3}, {2, 4, 2, 0, -6}}},
      {{{1, 2, 1, 4, -3}, {1, -2, 1, 0, 1}, {2, -4, 2, 8, 2}}},
      {{{1, 2, 1, 0, -3}, {1, -2, 1, -4, 1}, {2, -4, 2, 0, 2}}}}},
    {{{{{1, 6, 1, -2, 10}, {1, 2, 1, 2, -6}, {2, 4, 2, -4, -4}}},
      {{{1, 2, 1, 2, -6}, {1, -2, 1, 6, 10}, {2, -4, 2, 4, -4}}},
      {{{1, 2, 1, -2, -2}, {1, -2, 1, 2, -2}, {2, -4, 2, -4, 4}}}}},
    {{{{{1, 4, 1, -4, 8}, {1, 0, 1, 0, -8}, {2, 8, 2, 0, 0}}},
      {{{1, 0, 1, 0, -8}, {1, -4, 1, 4, 8}, {2, 0, 2, 8, 0}}},
      {{{1, 0, 1, -4, 0}, {1, -4, 1, 0, 0}, {2, 0, 2, 0, 0}}}}},
    {{{{{1, 4, 1, 2, 5}, {1, 0, 1, -2, -7}, {2, 8, 2, -4, 2}}},
      {{{1, 0, 1, 6, 1}, {1, -4, 1, 2, 5}, {2, 0, 2, 4, -6}}},
      {{{1, 0, 1, 2, -3}, {1, -4, 1, -2, 1}, {2, 0, 2, -4, 2}}}}},
    {{{{{1, 2, 1, -4, 5}, {1, 6, 1, 0, 1}, {2, 4, 2, 0, -6}}},
      {{{1, -2, 1, 0, -7}, {1, 2, 1, 4, 5}, {2, -4, 2, 8, 2}}},
      {{{1, -2, 1, -4, 1}, {1, 2, 1, 0, -3}, {2, -4, 2, 0, 2}}}}},
    {{{{{1, 2, 1, 2, 2}, {1, 6, 1, -2, 2}, {2, 4, 2, -4, -4}}},
      {{{1, -2, 1, 6, 2}, {1, 2, 1, 2, 2}, {2, -4, 2, 4, -4}}},
      {{{1, -2, 1, 2, -2}, {1, 2, 1, -2, -2}, {2, -4, 2, -4, 4}}}}},
}};

/// Target family after R1, R2, R3.
inline constexpr std::array<std::array<int, 3>, 8> transition_families{{
    {3, 2, 8}, {4, 1, 6}, {1, 4, 7}, {2, 3, 5}, {7, 6, 4}, {8, 5, 2}, {5, 8, 3}, {6, 7, 1},
}};

inline int mod4(const Integer& v) { return static_cast<int>(floor_mod(v, 4)); }

} // namespace detail

inline bool is_admissible_type(const TypeTag& t)
{
    for (const auto& f : detail::family_types) {
        if (f == t) {
            return true;
        }
    }
    return false;
}

inline TypeTag type_of_family(int ell)
{
    if (ell < 1 || ell > 8) {
        throw Error("inadmissible_id", "family index " + std::to_string(ell) + " outside 1..8");
    }
    return detail::family_types[static_cast<std::size_t>(ell - 1)];
}

/// Inverse of type_of_family; nullopt outside the eight admissible types.
inline std::optional<int> family_of_type(const TypeTag& t)
{
    for (std::size_t k = 0; k < detail::family_types.size(); ++k) {
        if (detail::family_types[k] == t) {
            return static_cast<int>(k + 1);
        }
    }
    return std::nullopt;
}

inline bool is_admissible(const ClosedFormId& id)
{
    if (id.ell < 1 || id.ell > 8) {
        return false;
    }
    return type_of_family(id.ell) == TypeTag{detail::mod4(id.m1), detail::mod4(id.m2)};
}

inline MassVector closed_form_eval(const ClosedFormId& id)
{
    if (!is_admissible(id)) {
        throw Error("inadmissible_id", "inadmissible (l,m1,m2) = (" + std::to_string(id.ell) + "," +
                                           id.m1.str() + "," + id.m2.str() + ")");
    }
    const auto& table = detail::family_tables[static_cast<std::size_t>(id.ell - 1)];
    const Integer m1sq = id.m1 * id.m1;
    const Integer m2sq = id.m2 * id.m2;
    MassVector out;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            const auto& p = table[i][j];
            Integer num = p[0] * m1sq + p[1] * id.m1 + p[2] * m2sq + p[3] * id.m2 + p[4];
            out.coeff[i][j] = to_integer(Rational(num, 4));
        }
    }
    return out;
}

namespace detail {

inline Integer row_sum(const MassVector& sigma, std::size_t i)
{
    return sigma.coeff[i][0] + sigma.coeff[i][1] + sigma.coeff[i][2];
}

/// (N(s1) - N(s3)) / 4 and (N(s2) - N(s3)) / 4, where N sums a row.
inline std::array<Integer, 2> family_parameters(const MassVector& sigma)
{
    if (!sigma.has_zero_offset()) {
        throw Error("not_gamma_type", "not a Gamma-type vector: nonzero constant offset");
    }
    for (const auto& row : sigma.coeff) {
        for (const auto& c : row) {
            if (floor_mod(c, 4) != 0) {
                throw Error("not_gamma_type", "not a Gamma-type vector: coefficient " + c.str() +
                                                  " is not a multiple of 4");
            }
        }
    }
    const Integer n3 = row_sum(sigma, 2);
    return {(row_sum(sigma, 0) - n3) / 4, (row_sum(sigma, 1) - n3) / 4};
}

} // namespace detail

inline TypeTag type_of(const MassVector& sigma)
{
    const auto m = detail::family_parameters(sigma);
    TypeTag t{detail::mod4(m[0]), detail::mod4(m[1])};
    if (!is_admissible_type(t)) {
        throw Error("not_gamma_type", "not a Gamma-type vector: type (" + std::to_string(t.m1) + "," +
                                          std::to_string(t.m2) + ") is not admissible");
    }
    return t;
}

inline ClosedFormId invert_to_closed_form(const MassVector& sigma)
{
    const auto m = detail::family_parameters(sigma);
    const TypeTag t{detail::mod4(m[0]), detail::mod4(m[1])};
    const auto ell = family_of_type(t);
    if (!ell) {
        throw Error("not_gamma_type", "not a Gamma-type vector: type (" + std::to_string(t.m1) + "," +
                                          std::to_string(t.m2) + ") is not admissible");
    }
    ClosedFormId id{*ell, m[0], m[1]};
    if (closed_form_eval(id) != sigma) {
        throw Error("not_representable", "not representable by F^(" + std::to_string(*ell) + ")(" +
                                             m[0].str() + "," + m[1].str() + ")");
    }
    return id;
}

/// Maps: R1 (1-m1, m2), R2 (m1, 1-m2), R3 (-1-m2, -1-m1).
inline ClosedFormId transition(const ClosedFormId& id, int generator)
{
    ReflectionSystem<3>::check_generator(generator);
    if (!is_admissible(id)) {
        throw Error("inadmissible_id", "inadmissible (l,m1,m2)");
    }
    ClosedFormId out;
    out.ell = detail::transition_families[static_cast<std::size_t>(id.ell - 1)]
                                         [static_cast<std::size_t>(generator - 1)];
    switch (generator) {
    case 1:
        out.m1 = 1 - id.m1;
        out.m2 = id.m2;
        break;
    case 2:
        out.m1 = id.m1;
        out.m2 = 1 - id.m2;
        break;
    default:
        out.m1 = -1 - id.m2;
        out.m2 = -1 - id.m1;
        break;
    }
    return out;
}

inline TypeTag type_transition(const TypeTag& t, int generator)
{
    ReflectionSystem<3>::check_generator(generator);
    if (!is_admissible_type(t)) {
        throw Error("not_gamma_type", "type tag is not admissible");
    }
    auto m = [](int v) { return ((v % 4) + 4) % 4; };
    switch (generator) {
    case 1:
        return {m(1 - t.m1), t.m2};
    case 2:
        return {t.m1, m(1 - t.m2)};
    default:
        return {m(-t.m2 - 1), m(-t.m1 - 1)};
    }
}

/// Masses when every weight equals 1.
inline std::array<Integer, 3> special_case_table(const Integer& m1, const Integer& m2)
{
    if (!is_admissible_type({detail::mod4(m1), detail::mod4(m2)})) {
        throw Error("inadmissible_pair", "inadmissible pair (" + m1.str() + "," + m2.str() + ")");
    }
    return {m1 * (m1 + 3) + m2 * (m2 - 1), m1 * (m1 - 1) + m2 * (m2 + 3), m1 * (m1 - 1) + m2 * (m2 - 1)};
}

} // namespace b2toda
