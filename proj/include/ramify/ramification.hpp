#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramify/cyclotomic.hpp"
#include "ramify/errors.hpp"
#include "ramify/group.hpp"
#include "ramify/profile.hpp"

namespace ramify {

/// Orbit [I, gamma] encoded by an element g with gamma(g) = zeta_e, where
/// zeta_e = zeta_n^(n/e) and n = exponent(G).
struct RamificationType {
    int id = 0;
    int e = 1;
    Element representative = 0;
    std::vector<int> class_orbit;   // sorted class ids
    std::vector<int> stabilizer_A;  // sorted residues mod e
    int index_U_A = 1;
};

inline void require_profile_matches(const FiniteGroup& g, const CyclotomicProfile& profile) {
    if (profile.modulus != g.exponent())
        throw ComputationError("profile modulus " + std::to_string(profile.modulus) + " differs from exponent " +
                               std::to_string(g.exponent()) + " of " + (g.name().empty() ? "the group" : g.name()));
}

/// One type per orbit of nontrivial classes under C -> C^k, k in H.
/// Ordered by (e, smallest class id in the orbit).
inline std::vector<RamificationType> ramification_types(const FiniteGroup& g, const CyclotomicProfile& profile) {
    require_profile_matches(g, profile);
    const auto& classes = g.classes();
    std::vector<bool> seen(classes.size(), false);
    seen[0] = true;
    std::vector<RamificationType> out;
    for (const auto& c : classes) {
        if (seen[c.id]) continue;
        RamificationType t;
        t.e = c.element_order;
        t.representative = c.representative;
        for (int k : profile.subgroup) {
            const int image = g.class_of(g.power(c.representative, profile.modulus == 1 ? 1 : k));
            if (!seen[image]) {
                seen[image] = true;
                t.class_orbit.push_back(image);
            }
        }
        std::sort(t.class_orbit.begin(), t.class_orbit.end());
        const auto u = profile.projection(t.e);
        for (int k : u)
            if (g.class_of(g.power(c.representative, k)) == c.id) t.stabilizer_A.push_back(k);
        t.index_U_A = static_cast<int>(u.size() / t.stabilizer_A.size());
        out.push_back(std::move(t));
    }
    // classes are already sorted by element order, so the first unseen class
    // of each orbit is its smallest id; a stable sort by e keeps that order
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.e < b.e; });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i);
    return out;
}

inline int classify_tame_element(const FiniteGroup& g, const std::vector<RamificationType>& types, Element x) {
    if (x == 0) throw ComputationError("the identity has no ramification type");
    if (!g.contains(x)) throw ComputationError("element index out of range");
    const int c = g.class_of(x);
    for (const auto& t : types)
        if (std::binary_search(t.class_orbit.begin(), t.class_orbit.end(), c)) return t.id;
    throw ComputationError("element not covered by the type list");
}

inline int classify_tame_element(const FiniteGroup& g, const CyclotomicProfile& profile, Element x) {
    return classify_tame_element(g, ramification_types(g, profile), x);
}

struct KummerType {
    bool unramified = true;
    Element inertia_generator = 0;  // sigma^r as an element of the Cn preset
    std::int64_t gamma_exponent = 0;  // gamma(sigma^r) = zeta_n^gamma_exponent
    int type_id = -1;
};

/// Inertia and tame label for Q(zeta_n, a^(1/n)) at a prime where a has
/// valuation r; the group is the Cn preset (element k is sigma^k).
inline KummerType kummer_type(int n, std::int64_t r, const CyclotomicProfile& profile) {
    if (n < 1) throw ComputationError("n must be positive");
    r = mod(r, n);
    KummerType out;
    if (r == 0) return out;
    const auto g = named_group("C" + std::to_string(n));
    out.unramified = false;
    out.inertia_generator = static_cast<Element>(r);
    out.gamma_exponent = std::gcd(r, static_cast<std::int64_t>(n));
    out.type_id = classify_tame_element(g, profile, out.inertia_generator);
    return out;
}

/// A type whose representative lies in no conjugate of the proper subgroup
/// h; among several, the one of largest e (then smallest id).
inline RamificationType non_field_detector(const FiniteGroup& g, const ElementSet& h,
                                           const std::optional<CyclotomicProfile>& profile = std::nullopt) {
    if (!is_subgroup(g, h)) throw ComputationError("H is not a subgroup");
    if (h.size() == g.order()) throw ComputationError("H must be a proper subgroup");
    const auto prof = profile ? *profile : make_profile(g.exponent(), "Q");
    std::optional<RamificationType> best;
    for (const auto& t : ramification_types(g, prof)) {
        const auto& cls = g.classes()[g.class_of(t.representative)];
        if (std::none_of(cls.members.begin(), cls.members.end(), [&](Element x) { return set_contains(h, x); }) &&
            (!best || t.e > best->e))
            best = t;
    }
    if (best) return *best;
    throw TheoremViolation("non-field detector", "G is a union of conjugates of a proper subgroup");
}

// ---------------------------------------------------------------------------
// Abstract local ramification data

struct WildSegment {
    Rational start;
    ElementSet group;
};

/// Inertia image with wild filtration and tame label. The segment list
/// starts at 1 with W0 and ends with the trivial group.
struct RamificationDatum {
    FiniteGroup group;
    ElementSet inertia;
    Element tame_generator = 0;
    int e0 = 1;
    std::vector<WildSegment> segments;
    std::vector<int> label;  // per element of inertia: j with x W0 = g0^j W0

    const ElementSet& wild() const { return segments.front().group; }
    bool is_tame() const { return wild().size() == 1; }

    /// gamma^d(x) as an e0-th root of unity, x in the inertia group.
    Cyclotomic gamma_power(Element x, std::int64_t d) const {
        auto it = std::lower_bound(inertia.begin(), inertia.end(), x);
        if (it == inertia.end() || *it != x) throw ComputationError("element outside the inertia group");
        return Cyclotomic::root_of_unity(e0, label[it - inertia.begin()] * d);
    }
};

inline RamificationDatum make_datum(const FiniteGroup& g, ElementSet inertia, std::vector<WildSegment> chain,
                                    std::optional<Element> tame_generator = std::nullopt) {
    inertia = normalize_set(std::move(inertia));
    if (!is_subgroup(g, inertia)) throw ComputationError("inertia set is not a subgroup");
    if (chain.empty()) throw ComputationError("wild chain must be nonempty");
    if (chain.front().start != 1) throw ComputationError("wild chain must start at 1");
    for (std::size_t k = 0; k < chain.size(); ++k) {
        auto& w = chain[k].group;
        w = normalize_set(std::move(w));
        if (!is_subgroup(g, w)) throw ComputationError("wild term " + std::to_string(k) + " is not a subgroup");
        if (!is_subset(w, inertia)) throw ComputationError("wild term " + std::to_string(k) + " not inside inertia");
        if (!is_normal_in(g, w, inertia))
            throw ComputationError("wild term " + std::to_string(k) + " is not normal in inertia");
        if (k > 0) {
            if (chain[k].start <= chain[k - 1].start) throw ComputationError("breaks must be strictly increasing");
            if (!is_subset(w, chain[k - 1].group) || w.size() == chain[k - 1].group.size())
                throw ComputationError("wild chain must strictly decrease at each break");
        }
    }
    if (chain.back().group.size() != 1) throw ComputationError("wild chain must end at the trivial group");

    const ElementSet& w0 = chain.front().group;
    const Element g0 = tame_generator ? *tame_generator : 0;
    if (!set_contains(inertia, g0)) throw ComputationError("tame generator not in inertia");

    RamificationDatum d;
    d.group = g;
    d.e0 = static_cast<int>(inertia.size() / w0.size());
    d.tame_generator = g0;
    d.label.assign(inertia.size(), -1);
    Element coset = 0;
    for (int j = 0; j < d.e0; ++j) {
        for (Element w : w0) {
            const Element x = g.mul(coset, w);
            const auto pos = std::lower_bound(inertia.begin(), inertia.end(), x) - inertia.begin();
            if (d.label[pos] >= 0) throw ComputationError("tame generator does not generate inertia modulo W0");
            d.label[pos] = j;
        }
        coset = g.mul(coset, g0);
    }
    d.inertia = std::move(inertia);
    d.segments = std::move(chain);
    return d;
}

/// Tame datum of a type: I = <g>, gamma(g) = zeta_e.
inline RamificationDatum make_tame_datum(const FiniteGroup& g, const RamificationType& t) {
    return make_datum(g, cyclic_subgroup(g, t.representative), {{Rational(1), {0}}}, t.representative);
}

inline RamificationDatum make_tame_datum(const FiniteGroup& g, Element x) {
    return make_datum(g, cyclic_subgroup(g, x), {{Rational(1), {0}}}, x);
}

inline RamificationDatum unramified_datum(const FiniteGroup& g) { return make_datum(g, {0}, {{Rational(1), {0}}}); }

/// x f x^-1: every group in the datum conjugated by x.
inline RamificationDatum conjugate_datum(const RamificationDatum& d, Element x) {
    const auto& g = d.group;
    std::vector<WildSegment> chain;
    for (const auto& s : d.segments) chain.push_back({s.start, conjugate_set(g, s.group, x)});
    return make_datum(g, conjugate_set(g, d.inertia, x), std::move(chain), g.conjugate(d.tame_generator, x));
}

/// phi o f; equal consecutive wild images are merged.
inline RamificationDatum pushforward_datum(const RamificationDatum& d, const GroupHom& phi) {
    if (!(phi.source == d.group)) throw ComputationError("homomorphism source differs from the datum's group");
    std::vector<WildSegment> chain;
    for (const auto& s : d.segments) {
        auto image = phi.image_of(s.group);
        if (!chain.empty() && chain.back().group == image) continue;
        chain.push_back({s.start, std::move(image)});
    }
    return make_datum(phi.target, phi.image_of(d.inertia), std::move(chain), phi(d.tame_generator));
}

}  // namespace ramify
