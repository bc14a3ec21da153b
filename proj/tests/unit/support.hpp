#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "b2toda/b2toda.hpp"

namespace b2toda::testing {

/// Row-major coefficients, offset zero.
inline MassVector mv(std::array<int, 9> c)
{
    MassVector v;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            v.coeff[i][j] = c[3 * i + j];
        }
    }
    return v;
}

inline MassVector2 mv2(std::array<int, 4> c)
{
    MassVector2 v;
    v.coeff = {{{c[0], c[1]}, {c[2], c[3]}}};
    return v;
}

/// Positive rational with numerator and denominator in 1..12.
inline Rational random_positive(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> d(1, 12);
    return Rational(d(rng), d(rng));
}

inline std::array<Rational, 3> random_mu(std::mt19937_64& rng)
{
    return {random_positive(rng), random_positive(rng), random_positive(rng)};
}

inline Word random_word(std::mt19937_64& rng, std::size_t max_len, int generators = 3)
{
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<int> g(1, generators);
    Word w(len(rng));
    for (auto& x : w) {
        x = g(rng);
    }
    return w;
}

} // namespace b2toda::testing
