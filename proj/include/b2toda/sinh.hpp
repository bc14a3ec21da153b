#pragma once

// Rank-1 affine (sinh-Gordon) reduction: two components, two reflections,
// and the parity-split parametrization by a single integer m.

#include <optional>
#include <string>
#include <vector>

#include "b2toda/orbit.hpp"

namespace b2toda {

using MassVector2 = BasicMassVector<2>;

inline const ReflectionSystem<2>& sinh_system()
{
    static const ReflectionSystem<2> system(CartanMatrix<2>(RationalMatrix<2>{{
                                                {Rational(1), Rational(-1)},
                                                {Rational(-1), Rational(1)},
                                            }}),
                                            {Integer(1), Integer(1)});
    return system;
}

inline MassVector2 sinh_reflect(const MassVector2& sigma, int generator)
{
    return sinh_system().reflect(sigma, generator);
}

/// (s1 - s2)^2 - 4(mu1 s1 + mu2 s2), expanded in mu.
inline QuadraticPolynomial<2> sinh_residual(const MassVector2& sigma)
{
    return sinh_system().quadric(sigma);
}

inline MassVector2 sinh_closed_form(const Integer& m)
{
    MassVector2 v;
    const Integer sq = m * m;
    if (floor_mod(m, 2) == 1) {
        v.coeff = {{{(m + 1) * (m + 1), sq - 1}, {sq - 1, (m - 1) * (m - 1)}}};
    } else {
        v.coeff = {{{sq, (m - 1) * (m - 1) - 1}, {(m + 1) * (m + 1) - 1, sq}}};
    }
    return v;
}

/// The m with sinh_closed_form(m) == sigma, if any. Row sums differ by 4m
/// up to sign, so only two candidates need checking.
inline std::optional<Integer> sinh_parameter(const MassVector2& sigma)
{
    if (!sigma.has_zero_offset()) {
        return std::nullopt;
    }
    const Integer diff = sigma.coeff[0][0] + sigma.coeff[0][1] - sigma.coeff[1][0] - sigma.coeff[1][1];
    if (floor_mod(diff, 4) != 0) {
        return std::nullopt;
    }
    const Integer m = diff / 4;
    for (const Integer& candidate : {m, Integer(-m)}) {
        if (sinh_closed_form(candidate) == sigma) {
            return candidate;
        }
    }
    return std::nullopt;
}

/// BFS orbit of the origin; every element is checked against the quadric.
inline BasicOrbitStore<2> sinh_orbit(std::size_t max_level)
{
    auto store = enumerate_orbit(sinh_system(), OrbitBounds{max_level, std::nullopt});
    for (const auto& [sigma, e] : store) {
        if (!sinh_residual(sigma).is_zero()) {
            throw Error("domain_error", "orbit element violates the rank-1 quadric");
        }
    }
    return store;
}

} // namespace b2toda
