#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ramify/character.hpp"
#include "ramify/group.hpp"
#include "ramify/ramification.hpp"

namespace ramify {

/// Seeded generators of random ramification data, virtual characters and
/// homomorphisms for one group. Subgroup lists and hom lists are cached.
class Sampler {
public:
    Sampler(FiniteGroup g, std::uint64_t seed) : g_(std::move(g)), rng_(seed), subgroups_(all_subgroups(g_)) {}

    const FiniteGroup& group() const { return g_; }
    const std::vector<ElementSet>& subgroups() const { return subgroups_; }
    std::mt19937_64& rng() { return rng_; }

    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }

    /// Random datum: inertia any subgroup, W0 normal with cyclic quotient,
    /// random descending chain of I-normal subgroups, random rational breaks.
    RamificationDatum datum(bool force_wild = false) {
        for (int attempt = 0;; ++attempt) {
            const auto& inertia = subgroups_[uniform(0, static_cast<std::int64_t>(subgroups_.size()) - 1)];
            std::vector<std::pair<ElementSet, std::vector<Element>>> w0_options;  // (W0, tame generators)
            for (const auto& n : subgroups_) {
                if (!is_subset(n, inertia) || !is_normal_in(g_, n, inertia)) continue;
                if (force_wild && n.size() == 1 && attempt < 50) continue;
                std::vector<Element> gens;
                for (Element x : inertia)
                    if (coset_order(x, n) * n.size() == inertia.size()) gens.push_back(x);
                if (!gens.empty()) w0_options.push_back({n, std::move(gens)});
            }
            if (w0_options.empty()) continue;
            const auto& [w0, gens] = w0_options[uniform(0, static_cast<std::int64_t>(w0_options.size()) - 1)];
            std::vector<WildSegment> chain{{Rational(1), w0}};
            while (chain.back().group.size() > 1) {
                std::vector<const ElementSet*> smaller;
                for (const auto& s : subgroups_)
                    if (s.size() < chain.back().group.size() && is_subset(s, chain.back().group) &&
                        is_normal_in(g_, s, inertia))
                        smaller.push_back(&s);
                const auto* next = smaller[uniform(0, static_cast<std::int64_t>(smaller.size()) - 1)];
                const Rational step = make_rational(uniform(1, 6), uniform(1, 4));
                chain.push_back({chain.back().start + step, *next});
            }
            const Element g0 = gens[uniform(0, static_cast<std::int64_t>(gens.size()) - 1)];
            return make_datum(g_, inertia, std::move(chain), g0);
        }
    }

    /// Integer combination of the given basis with coefficients in [-k, k].
    Character combination(const std::vector<Character>& basis, int k = 3) {
        Character out = Character::zero(g_);
        for (const auto& b : basis) {
            const auto c = uniform(-k, k);
            if (c != 0) out += b * Rational(c);
        }
        return out;
    }

    /// Nonnegative combination: a genuine character.
    Character genuine(const std::vector<Character>& rows, int k = 2) {
        Character out = Character::zero(g_);
        for (const auto& b : rows) {
            const auto c = uniform(0, k);
            if (c != 0) out += b * Rational(c);
        }
        return out;
    }

    const std::vector<GroupHom>& homs_to(const FiniteGroup& target) {
        auto it = homs_.find(target.name());
        if (it == homs_.end()) it = homs_.emplace(target.name(), all_homs(g_, target)).first;
        return it->second;
    }

    Element element() { return static_cast<Element>(uniform(0, static_cast<std::int64_t>(g_.order()) - 1)); }

private:
    /// least k >= 1 with x^k in n
    std::size_t coset_order(Element x, const ElementSet& n) const {
        std::size_t k = 1;
        for (Element y = x; !set_contains(n, y); y = g_.mul(y, x)) ++k;
        return k;
    }

    FiniteGroup g_;
    std::mt19937_64 rng_;
    std::vector<ElementSet> subgroups_;
    std::map<std::string, std::vector<GroupHom>> homs_;
};

}  // namespace ramify
