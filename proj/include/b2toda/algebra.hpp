#pragma once

// Mass vectors as exact linear forms in the weights, the affine reflections
// generated by a Cartan matrix, and the Pohozaev quadric.
//
// A mass vector of rank N stores sigma_i = sum_j coeff[i][j] * mu_j + offset[i]
// with integer coefficients. Reflections are applied through the doubled
// Cartan matrix 2A, which is integral for every system used here, so no
// fractions ever appear in a mass vector.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "b2toda/error.hpp"
#include "b2toda/numeric.hpp"

namespace b2toda {

/// Generator indices, 1-based, in application order: {i1, i2, ..., in}
/// stands for R_in ... R_i2 R_i1, so i1 acts first.
using Word = std::vector<int>;

template <std::size_t N>
using IntegerMatrix = std::array<std::array<Integer, N>, N>;

template <std::size_t N>
using RationalMatrix = std::array<std::array<Rational, N>, N>;

template <std::size_t N>
struct BasicMassVector {
    IntegerMatrix<N> coeff{};
    std::array<Integer, N> offset{};

    static BasicMassVector zero() { return {}; }

    static BasicMassVector from_coefficients(const IntegerMatrix<N>& c)
    {
        BasicMassVector v;
        v.coeff = c;
        return v;
    }

    bool is_zero() const
    {
        for (std::size_t i = 0; i < N; ++i) {
            if (offset[i] != 0) {
                return false;
            }
            for (std::size_t j = 0; j < N; ++j) {
                if (coeff[i][j] != 0) {
                    return false;
                }
            }
        }
        return true;
    }

    bool has_zero_offset() const
    {
        return std::all_of(offset.begin(), offset.end(), [](const Integer& d) { return d == 0; });
    }

    friend bool operator==(const BasicMassVector& a, const BasicMassVector& b)
    {
        return a.coeff == b.coeff && a.offset == b.offset;
    }
    friend bool operator!=(const BasicMassVector& a, const BasicMassVector& b) { return !(a == b); }

    /// Canonical order: offsets first, then coefficients row-major.
    friend bool operator<(const BasicMassVector& a, const BasicMassVector& b)
    {
        for (std::size_t i = 0; i < N; ++i) {
            if (a.offset[i] != b.offset[i]) {
                return a.offset[i] < b.offset[i];
            }
        }
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t j = 0; j < N; ++j) {
                if (a.coeff[i][j] != b.coeff[i][j]) {
                    return a.coeff[i][j] < b.coeff[i][j];
                }
            }
        }
        return false;
    }
};

using MassVector = BasicMassVector<3>;

/// Weights mu: either formal indeterminates or exact positive rationals.
template <std::size_t N>
class BasicWeights {
public:
    static BasicWeights formal() { return BasicWeights(); }

    /// `constrained` asserts mu_1 + mu_2 + 2 mu_3 = 4 (rank 3 only).
    static BasicWeights numeric(const std::array<Rational, N>& values, bool constrained = false)
    {
        for (std::size_t i = 0; i < N; ++i) {
            if (values[i] <= 0) {
                throw Error("invalid_weights",
                            "weight mu_" + std::to_string(i + 1) + " = " + values[i].str() +
                                " is not positive");
            }
        }
        if (constrained) {
            if constexpr (N == 3) {
                if (values[0] + values[1] + 2 * values[2] != 4) {
                    throw Error("invalid_weights", "constrained weights must satisfy mu1+mu2+2mu3=4");
                }
            } else {
                throw Error("invalid_weights", "the weight constraint is defined for rank 3 only");
            }
        }
        BasicWeights w;
        w.values_ = values;
        w.constrained_ = constrained;
        return w;
    }

    static BasicWeights ones()
    {
        std::array<Rational, N> v;
        v.fill(Rational(1));
        return numeric(v);
    }

    bool is_formal() const { return !values_.has_value(); }
    bool is_numeric() const { return values_.has_value(); }
    bool constrained() const { return constrained_; }

    const std::array<Rational, N>& values() const
    {
        if (!values_) {
            throw Error("formal_weights", "numeric weights required, got formal weights");
        }
        return *values_;
    }

private:
    BasicWeights() = default;

    std::optional<std::array<Rational, N>> values_;
    bool constrained_ = false;
};

using Weights = BasicWeights<3>;

/// Degree-1 polynomial in mu: sum_j coeff[j] mu_j + constant.
template <std::size_t N>
struct LinearPolynomial {
    std::array<Rational, N> coeff{};
    Rational constant{0};

    Rational evaluate(const std::array<Rational, N>& mu) const
    {
        Rational r = constant;
        for (std::size_t j = 0; j < N; ++j) {
            r += coeff[j] * mu[j];
        }
        return r;
    }

    bool is_zero() const
    {
        return constant == 0 &&
               std::all_of(coeff.begin(), coeff.end(), [](const Rational& c) { return c == 0; });
    }

    friend bool operator==(const LinearPolynomial&, const LinearPolynomial&) = default;
};

/// Quadratic polynomial in mu. Only the upper triangle of `quad` is used:
/// quad[j][k] with j <= k is the coefficient of mu_j mu_k.
template <std::size_t N>
struct QuadraticPolynomial {
    RationalMatrix<N> quad{};
    std::array<Rational, N> linear{};
    Rational constant{0};

    void add_quadratic(std::size_t j, std::size_t k, const Rational& v)
    {
        quad[std::min(j, k)][std::max(j, k)] += v;
    }

    const Rational& quadratic(std::size_t j, std::size_t k) const
    {
        return quad[std::min(j, k)][std::max(j, k)];
    }

    Rational evaluate(const std::array<Rational, N>& mu) const
    {
        Rational r = constant;
        for (std::size_t j = 0; j < N; ++j) {
            r += linear[j] * mu[j];
            for (std::size_t k = j; k < N; ++k) {
                r += quad[j][k] * mu[j] * mu[k];
            }
        }
        return r;
    }

    bool is_zero() const
    {
        if (constant != 0) {
            return false;
        }
        for (std::size_t j = 0; j < N; ++j) {
            if (linear[j] != 0) {
                return false;
            }
            for (std::size_t k = j; k < N; ++k) {
                if (quad[j][k] != 0) {
                    return false;
                }
            }
        }
        return true;
    }

    friend bool operator==(const QuadraticPolynomial&, const QuadraticPolynomial&) = default;
};

/// Componentwise substitution of arbitrary rational values for mu.
template <std::size_t N>
std::array<Rational, N> substitute(const BasicMassVector<N>& sigma, const std::array<Rational, N>& mu)
{
    std::array<Rational, N> out;
    for (std::size_t i = 0; i < N; ++i) {
        Rational r(sigma.offset[i]);
        for (std::size_t j = 0; j < N; ++j) {
            r += Rational(sigma.coeff[i][j]) * mu[j];
        }
        out[i] = r;
    }
    return out;
}

/// sigma evaluated at numeric weights; rejects formal weights.
template <std::size_t N>
std::array<Rational, N> eval_at(const BasicMassVector<N>& sigma, const BasicWeights<N>& w)
{
    if (w.is_formal()) {
        throw Error("formal_weights", "eval_at requires numeric weights");
    }
    return substitute(sigma, w.values());
}

/// Cartan matrix with rational entries; unit diagonal and integral 2A.
template <std::size_t N>
class CartanMatrix {
public:
    explicit CartanMatrix(const RationalMatrix<N>& a) : a_(a)
    {
        for (std::size_t i = 0; i < N; ++i) {
            if (a_[i][i] != 1) {
                throw Error("domain_error", "Cartan matrix must have unit diagonal");
            }
            for (std::size_t j = 0; j < N; ++j) {
                Rational twice = 2 * a_[i][j];
                if (!is_integral(twice)) {
                    throw Error("domain_error", "2A must be integral");
                }
                doubled_[i][j] = to_integer(twice);
            }
        }
    }

    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i][j]; }
    const RationalMatrix<N>& entries() const { return a_; }
    const IntegerMatrix<N>& doubled() const { return doubled_; }

private:
    RationalMatrix<N> a_;
    IntegerMatrix<N> doubled_{};
};

/// The reflection action of a Cartan matrix on rank-N mass vectors.
///
/// `symmetrizer` is a positive integer vector s with s_i a_ij = s_j a_ji. The
/// Pohozaev quadric of the system is
///   Q(sigma) = sum_ij s_i a_ij sigma_i sigma_j - 4 sum_i s_i mu_i sigma_i,
/// and each reflection replaces sigma_i by the other root of Q viewed as a
/// quadratic in sigma_i.
template <std::size_t N>
class ReflectionSystem {
public:
    ReflectionSystem(CartanMatrix<N> cartan, const std::array<Integer, N>& symmetrizer)
        : cartan_(std::move(cartan)), symmetrizer_(symmetrizer)
    {
        for (std::size_t i = 0; i < N; ++i) {
            if (symmetrizer_[i] <= 0) {
                throw Error("domain_error", "symmetrizer entries must be positive");
            }
            for (std::size_t j = 0; j < N; ++j) {
                if (Rational(symmetrizer_[i]) * cartan_(i, j) != Rational(symmetrizer_[j]) * cartan_(j, i)) {
                    throw Error("domain_error", "symmetrizer does not symmetrize the Cartan matrix");
                }
            }
        }
    }

    static constexpr std::size_t rank() { return N; }
    const CartanMatrix<N>& cartan() const { return cartan_; }
    const std::array<Integer, N>& symmetrizer() const { return symmetrizer_; }

    static void check_generator(int i)
    {
        if (i < 1 || i > static_cast<int>(N)) {
            throw Error("invalid_generator",
                        "generator index " + std::to_string(i) + " outside 1.." + std::to_string(N));
        }
    }

    /// Component i becomes 4 mu_i - 2 sum_j a_ij sigma_j + sigma_i.
    BasicMassVector<N> reflect(const BasicMassVector<N>& sigma, int generator) const
    {
        check_generator(generator);
        const std::size_t i = static_cast<std::size_t>(generator - 1);
        const auto& a2 = cartan_.doubled();
        BasicMassVector<N> out = sigma;
        for (std::size_t k = 0; k < N; ++k) {
            Integer c = sigma.coeff[i][k];
            for (std::size_t j = 0; j < N; ++j) {
                c -= a2[i][j] * sigma.coeff[j][k];
            }
            out.coeff[i][k] = c;
        }
        out.coeff[i][i] += 4;
        Integer d = sigma.offset[i];
        for (std::size_t j = 0; j < N; ++j) {
            d -= a2[i][j] * sigma.offset[j];
        }
        out.offset[i] = d;
        return out;
    }

    BasicMassVector<N> apply_word(BasicMassVector<N> sigma, const Word& word) const
    {
        for (int g : word) {
            sigma = reflect(sigma, g);
        }
        return sigma;
    }

    QuadraticPolynomial<N> quadric(const BasicMassVector<N>& sigma) const
    {
        QuadraticPolynomial<N> q;
        const auto& c = sigma.coeff;
        const auto& d = sigma.offset;
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t j = 0; j < N; ++j) {
                const Rational w = Rational(symmetrizer_[i]) * cartan_(i, j);
                if (w == 0) {
                    continue;
                }
                // sigma_i sigma_j = sum_kl c_ik c_jl mu_k mu_l + d_i sigma_j' + d_j sigma_i' + d_i d_j
                for (std::size_t k = 0; k < N; ++k) {
                    for (std::size_t l = 0; l < N; ++l) {
                        q.add_quadratic(k, l, w * Rational(c[i][k] * c[j][l]));
                    }
                    q.linear[k] += w * Rational(d[i] * c[j][k] + d[j] * c[i][k]);
                }
                q.constant += w * Rational(d[i] * d[j]);
            }
        }
        for (std::size_t i = 0; i < N; ++i) {
            const Rational w = -4 * Rational(symmetrizer_[i]);
            for (std::size_t k = 0; k < N; ++k) {
                q.add_quadratic(i, k, w * Rational(c[i][k]));
            }
            q.linear[i] += w * Rational(d[i]);
        }
        return q;
    }

    /// 2 mu_i - sum_j a_ij sigma_j.
    LinearPolynomial<N> residual_direction(const BasicMassVector<N>& sigma, int generator) const
    {
        check_generator(generator);
        const std::size_t i = static_cast<std::size_t>(generator - 1);
        LinearPolynomial<N> p;
        p.coeff[i] = 2;
        for (std::size_t j = 0; j < N; ++j) {
            const Rational& a = cartan_(i, j);
            if (a == 0) {
                continue;
            }
            for (std::size_t k = 0; k < N; ++k) {
                p.coeff[k] -= a * Rational(sigma.coeff[j][k]);
            }
            p.constant -= a * Rational(sigma.offset[j]);
        }
        return p;
    }

    /// sum_i s_i sigma_i at the probe. Descent measure.
    Rational weighted_mass(const BasicMassVector<N>& sigma, const std::array<Rational, N>& probe) const
    {
        auto v = substitute(sigma, probe);
        Rational r = 0;
        for (std::size_t i = 0; i < N; ++i) {
            r += Rational(symmetrizer_[i]) * v[i];
        }
        return r;
    }

private:
    CartanMatrix<N> cartan_;
    std::array<Integer, N> symmetrizer_;
};

/// The affine B2^(1) system: rows (1,0,-1), (0,1,-1), (-1/2,-1/2,1).
inline const ReflectionSystem<3>& b2_affine()
{
    static const ReflectionSystem<3> system(
        CartanMatrix<3>(RationalMatrix<3>{{
            {Rational(1), Rational(0), Rational(-1)},
            {Rational(0), Rational(1), Rational(-1)},
            {Rational(-1, 2), Rational(-1, 2), Rational(1)},
        }}),
        {Integer(1), Integer(1), Integer(2)});
    return system;
}

inline MassVector reflect(const MassVector& sigma, int generator)
{
    return b2_affine().reflect(sigma, generator);
}

/// The reflection is symbolic in mu, so the weights never change the result.
inline MassVector reflect(const MassVector& sigma, int generator, const Weights&)
{
    return reflect(sigma, generator);
}

inline MassVector apply_word(const MassVector& sigma, const Word& word)
{
    return b2_affine().apply_word(sigma, word);
}

/// (s1-s3)^2 + (s2-s3)^2 - 4(mu1 s1 + mu2 s2 + 2 mu3 s3), expanded in mu.
inline QuadraticPolynomial<3> pohozaev_residual(const MassVector& sigma)
{
    return b2_affine().quadric(sigma);
}

/// Residual at numeric weights.
inline Rational pohozaev_residual(const MassVector& sigma, const Weights& w)
{
    return pohozaev_residual(sigma).evaluate(w.values());
}

inline LinearPolynomial<3> residual_direction(const MassVector& sigma, int generator)
{
    return b2_affine().residual_direction(sigma, generator);
}

inline Rational residual_direction(const MassVector& sigma, int generator, const Weights& w)
{
    return residual_direction(sigma, generator).evaluate(w.values());
}

/// Mass vector from a coefficient literal; offset zero.
inline MassVector make_mass_vector(const IntegerMatrix<3>& coeff)
{
    return MassVector::from_coefficients(coeff);
}

} // namespace b2toda
