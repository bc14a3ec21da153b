#pragma once

// Breadth-first enumeration of the orbit of the origin, membership in the
// lattice description Gamma_N, and descent back to the origin.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "b2toda/algebra.hpp"

namespace b2toda {

struct OrbitBounds {
    std::size_t max_level = 0;
    /// Every coefficient of a stored element must stay <= this bound.
    std::optional<Integer> max_coefficient;
};

template <std::size_t N>
struct BasicOrbitElement {
    BasicMassVector<N> sigma;
    /// Minimal word length from the origin; the origin has level 0.
    std::size_t level = 0;
    Word word;
};

template <std::size_t N>
class BasicOrbitStore {
public:
    using Map = std::map<BasicMassVector<N>, BasicOrbitElement<N>>;
    using const_iterator = typename Map::const_iterator;

    BasicOrbitStore() = default;
    explicit BasicOrbitStore(OrbitBounds bounds) : bounds_(std::move(bounds)) {}

    /// Inserts unless present; returns true when the element was new.
    bool insert(BasicOrbitElement<N> element)
    {
        auto key = element.sigma;
        return elements_.emplace(std::move(key), std::move(element)).second;
    }

    const BasicOrbitElement<N>* find(const BasicMassVector<N>& sigma) const
    {
        auto it = elements_.find(sigma);
        return it == elements_.end() ? nullptr : &it->second;
    }

    bool contains(const BasicMassVector<N>& sigma) const { return elements_.count(sigma) != 0; }

    std::size_t size() const { return elements_.size(); }
    const_iterator begin() const { return elements_.begin(); }
    const_iterator end() const { return elements_.end(); }

    std::vector<BasicOrbitElement<N>> at_level(std::size_t level) const
    {
        std::vector<BasicOrbitElement<N>> out;
        for (const auto& [key, e] : elements_) {
            if (e.level == level) {
                out.push_back(e);
            }
        }
        return out;
    }

    const OrbitBounds& bounds() const { return bounds_; }
    bool truncated() const { return truncated_; }
    void mark_truncated() { truncated_ = true; }

private:
    Map elements_;
    OrbitBounds bounds_;
    bool truncated_ = false;
};

using OrbitElement = BasicOrbitElement<3>;
using OrbitStore = BasicOrbitStore<3>;

namespace detail {

template <std::size_t N>
bool within_coefficient_bound(const BasicMassVector<N>& sigma, const std::optional<Integer>& bound)
{
    if (!bound) {
        return true;
    }
    for (const auto& row : sigma.coeff) {
        for (const auto& c : row) {
            if (c > *bound) {
                return false;
            }
        }
    }
    return true;
}

} // namespace detail

/// Orbit of the origin under the system's reflections. Frontier nodes are
/// expanded in canonical order, generators in increasing index, so the
/// witness word recorded for each element is deterministic.
template <std::size_t N>
BasicOrbitStore<N> enumerate_orbit(const ReflectionSystem<N>& system, const OrbitBounds& bounds)
{
    BasicOrbitStore<N> store(bounds);
    std::vector<BasicMassVector<N>> frontier{BasicMassVector<N>::zero()};
    store.insert({BasicMassVector<N>::zero(), 0, {}});

    for (std::size_t level = 0; !frontier.empty(); ++level) {
        std::sort(frontier.begin(), frontier.end());
        std::vector<BasicMassVector<N>> next;
        for (const auto& sigma : frontier) {
            const BasicOrbitElement<N>& parent = *store.find(sigma);
            for (int g = 1; g <= static_cast<int>(N); ++g) {
                auto child = system.reflect(sigma, g);
                if (store.contains(child)) {
                    continue;
                }
                if (level >= bounds.max_level ||
                    !detail::within_coefficient_bound(child, bounds.max_coefficient)) {
                    store.mark_truncated();
                    continue;
                }
                Word w = parent.word;
                w.push_back(g);
                store.insert({child, level + 1, std::move(w)});
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }
    return store;
}

/// Enumeration runs over formal weights only; specialize afterwards with
/// eval_at.
inline OrbitStore enumerate(const OrbitBounds& bounds, const Weights& w = Weights::formal())
{
    if (!w.is_formal()) {
        throw Error("invalid_weights", "enumerate runs in formal weight mode only");
    }
    return enumerate_orbit(b2_affine(), bounds);
}

struct MembershipCertificate {
    bool nonneg = false;
    bool div4 = false;
    bool quadric_zero = false;

    bool member() const { return nonneg && div4 && quadric_zero; }
};

template <std::size_t N>
MembershipCertificate lattice_membership(const ReflectionSystem<N>& system, const BasicMassVector<N>& sigma)
{
    if (!sigma.has_zero_offset()) {
        throw Error("not_pure_polynomial", "not a pure mu-polynomial: nonzero constant offset");
    }
    MembershipCertificate cert;
    cert.nonneg = true;
    cert.div4 = true;
    for (const auto& row : sigma.coeff) {
        for (const auto& c : row) {
            cert.nonneg = cert.nonneg && c >= 0;
            cert.div4 = cert.div4 && floor_mod(c, 4) == 0;
        }
    }
    cert.quadric_zero = system.quadric(sigma).is_zero();
    return cert;
}

inline MembershipCertificate is_member_gamma_N(const MassVector& sigma)
{
    return lattice_membership(b2_affine(), sigma);
}

/// Greedy descent: repeatedly apply the smallest generator that strictly
/// lowers sum_i s_i sigma_i(probe), s being the symmetrizer. Returns the
/// generators in the order they were applied to sigma.
template <std::size_t N>
Word descend(const ReflectionSystem<N>& system, BasicMassVector<N> sigma, const BasicWeights<N>& probe)
{
    if (!lattice_membership(system, sigma).member()) {
        throw Error("not_in_gamma", "input is not in Gamma_N");
    }
    const auto& p = probe.values();
    Word word;
    Rational measure = system.weighted_mass(sigma, p);
    while (!sigma.is_zero()) {
        bool stepped = false;
        for (int g = 1; g <= static_cast<int>(N); ++g) {
            auto candidate = system.reflect(sigma, g);
            Rational m = system.weighted_mass(candidate, p);
            if (m < measure) {
                sigma = std::move(candidate);
                measure = m;
                word.push_back(g);
                stepped = true;
                break;
            }
        }
        if (!stepped) {
            throw Error("not_in_gamma", "no generator decreases the measure at a nonzero vector");
        }
    }
    return word;
}

inline Word descend_to_origin(const MassVector& sigma, const Weights& probe = Weights::ones())
{
    return descend(b2_affine(), sigma, probe);
}

/// Inverse of a word: generators are involutions, so reverse the order.
inline Word inverse_word(Word w)
{
    std::reverse(w.begin(), w.end());
    return w;
}

struct RelationResult {
    std::string name;
    std::vector<MassVector> counterexamples;
};

struct RelationReport {
    std::size_t trials = 0;
    std::vector<RelationResult> relations;

    bool ok() const
    {
        return std::all_of(relations.begin(), relations.end(),
                           [](const RelationResult& r) { return r.counterexamples.empty(); });
    }
};

/// Each relation as a pair of words whose actions must agree.
struct Relation {
    const char* name;
    Word lhs;
    Word rhs;
};

inline const std::vector<Relation>& group_relations()
{
    // Words are in application order; (R1 R3)^2 = R1 R3 R1 R3 applies R3 first.
    static const std::vector<Relation> relations{
        {"R1^2=R2^2=R3^2=I", {}, {}},
        {"R1R2=R2R1", {2, 1}, {1, 2}},
        {"(R1R3)^2=(R3R1)^2", {3, 1, 3, 1}, {1, 3, 1, 3}},
        {"(R2R3)^2=(R3R2)^2", {3, 2, 3, 2}, {2, 3, 2, 3}},
        {"(R1R3)^4=I", {3, 1, 3, 1, 3, 1, 3, 1}, {}},
        {"(R2R3)^4=I", {3, 2, 3, 2, 3, 2, 3, 2}, {}},
    };
    return relations;
}

inline MassVector random_mass_vector(std::mt19937_64& rng, std::int64_t bound)
{
    std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
    MassVector v;
    for (auto& row : v.coeff) {
        for (auto& c : row) {
            c = dist(rng);
        }
    }
    for (auto& d : v.offset) {
        d = dist(rng);
    }
    return v;
}

/// Checks the defining relations of the affine Weyl group on `trials`
/// random integer vectors with all 12 entries in [-entry_bound, entry_bound].
inline RelationReport check_relations(std::size_t trials, std::uint64_t seed, std::int64_t entry_bound = 100)
{
    if (trials == 0) {
        throw Error("domain_error", "trials must be at least 1");
    }
    std::mt19937_64 rng(seed);
    RelationReport report;
    report.trials = trials;
    const auto& relations = group_relations();
    for (const auto& r : relations) {
        report.relations.push_back({r.name, {}});
    }
    for (std::size_t t = 0; t < trials; ++t) {
        // The first trial always uses the origin.
        MassVector sigma = t == 0 ? MassVector::zero() : random_mass_vector(rng, entry_bound);
        for (std::size_t k = 0; k < relations.size(); ++k) {
            bool holds;
            if (k == 0) {
                holds = true;
                for (int g = 1; g <= 3; ++g) {
                    holds = holds && apply_word(sigma, {g, g}) == sigma;
                }
            } else {
                holds = apply_word(sigma, relations[k].lhs) == apply_word(sigma, relations[k].rhs);
            }
            if (!holds) {
                report.relations[k].counterexamples.push_back(sigma);
            }
        }
    }
    return report;
}

} // namespace b2toda
