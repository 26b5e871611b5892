#pragma once

#include <string>
#include <vector>

#include "ramify/character.hpp"
#include "ramify/errors.hpp"
#include "ramify/ramification.hpp"

namespace ramify {

namespace detail {

inline Rational rational_or_throw(const Cyclotomic& x, const char* what) {
    if (!x.is_rational()) throw ComputationError(std::string(what) + " is not rational");
    return x.rational_value();
}

/// <psi, 1>_H
inline Cyclotomic trivial_multiplicity(const Character& psi, const ElementSet& h) {
    Cyclotomic sum;
    for (Element x : h) sum += psi(x);
    sum *= Rational(1, static_cast<unsigned long>(h.size()));
    return sum;
}

/// <psi, gamma^d>_I
inline Cyclotomic gamma_multiplicity(const RamificationDatum& d, const Character& psi, std::int64_t k) {
    return inner_product_on(
        d.inertia, [&](Element x) -> const Cyclotomic& { return psi(x); },
        [&](Element x) { return d.gamma_power(x, k); });
}

/// Integral of psi(1) - <psi,1>_{G_t} over the wild segments t >= 1.
inline Cyclotomic wild_integral(const RamificationDatum& d, const Character& psi) {
    Cyclotomic sum;
    for (std::size_t k = 0; k + 1 < d.segments.size(); ++k) {
        const Rational length = d.segments[k + 1].start - d.segments[k].start;
        sum += (psi.degree() - trivial_multiplicity(psi, d.segments[k].group)) * length;
    }
    return sum;
}

inline void require_same_group(const RamificationDatum& d, const Character& psi) {
    if (!(d.group == psi.group)) throw ComputationError("character and datum live on different groups");
}

}  // namespace detail

/// sum_{d | e0, d != e0} phi(e0/d) <psi, gamma^d>_I
inline Rational fine_tame_part(const RamificationDatum& d, const Character& psi) {
    detail::require_same_group(d, psi);
    Cyclotomic sum;
    for (std::int64_t div : divisors(d.e0)) {
        if (div == d.e0) continue;
        sum += detail::gamma_multiplicity(d, psi, div) * Rational(euler_phi(d.e0 / div));
    }
    return detail::rational_or_throw(sum, "tame part of the fine conductor");
}

inline Rational fine_conductor(const RamificationDatum& d, const Character& psi) {
    detail::require_same_group(d, psi);
    Cyclotomic sum = psi.degree() - detail::trivial_multiplicity(psi, d.wild());
    sum += detail::wild_integral(d, psi);
    return detail::rational_or_throw(sum, "fine conductor") + fine_tame_part(d, psi);
}

inline Rational artin_conductor(const RamificationDatum& d, const Character& psi) {
    detail::require_same_group(d, psi);
    Cyclotomic sum = psi.degree() - detail::trivial_multiplicity(psi, d.inertia);
    sum += detail::wild_integral(d, psi);
    return detail::rational_or_throw(sum, "Artin conductor");
}

/// psi(1) - sum_{k=1}^{e} (k/e) <psi, gamma^k>_I for tame data.
inline Rational wy_weight(const RamificationDatum& d, const Character& psi) {
    detail::require_same_group(d, psi);
    if (!d.is_tame()) throw ComputationError("Wood-Yasuda weight needs a tame datum");
    Cyclotomic sum = psi.degree();
    for (int k = 1; k <= d.e0; ++k)
        sum -= detail::gamma_multiplicity(d, psi, k) * make_rational(k, d.e0);
    return detail::rational_or_throw(sum, "Wood-Yasuda weight");
}

/// Right-hand side of fine - artin.
inline Rational fine_minus_artin(const RamificationDatum& d, const Character& psi) {
    Cyclotomic diff = detail::trivial_multiplicity(psi, d.inertia) - detail::trivial_multiplicity(psi, d.wild());
    return detail::rational_or_throw(diff, "multiplicity difference") + fine_tame_part(d, psi);
}

// ---------------------------------------------------------------------------

/// Fraction-free (Bareiss) determinant of a rational matrix: rows are
/// cleared of denominators first.
inline Rational determinant(const std::vector<std::vector<Rational>>& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
    Rational scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw ComputationError("determinant needs a square matrix");
        Integer den = 1;
        for (const auto& x : a[i]) den = lcm(den, Integer(x.get_den()));
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Integer(a[i][j] * den);
        scale *= Rational(den);
    }
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    Rational det(m[n - 1][n - 1] * sign);
    det /= scale;
    det.canonicalize();
    return det;
}

struct ConductorMatrix {
    FiniteGroup group;
    CyclotomicProfile profile;
    std::vector<RamificationType> types;
    std::vector<Character> characters;
    std::vector<std::vector<Rational>> entries;  // rows: types, columns: characters
    Rational determinant;
};

/// a_ij = fine conductor of the tame datum of type i against the j-th
/// Galois-orbit character; throws TheoremViolation on a singular matrix.
inline ConductorMatrix conductor_matrix(const FiniteGroup& g, const CyclotomicProfile& profile,
                                        const CharacterTable* table = nullptr) {
    ConductorMatrix out;
    out.group = g;
    out.profile = profile;
    out.types = ramification_types(g, profile);
    const CharacterTable own = table ? CharacterTable{} : character_table(g);
    out.characters = galois_orbit_characters(table ? *table : own, profile);
    if (out.types.size() != out.characters.size())
        throw TheoremViolation("type count equals orbit-character count",
                               std::to_string(out.types.size()) + " types vs " +
                                   std::to_string(out.characters.size()) + " characters");
    for (const auto& t : out.types) {
        const auto datum = make_tame_datum(g, t);
        std::vector<Rational> row;
        for (const auto& psi : out.characters) row.push_back(fine_conductor(datum, psi));
        out.entries.push_back(std::move(row));
    }
    out.determinant = determinant(out.entries);
    if (out.determinant == 0)
        throw TheoremViolation("conductor matrix invertible",
                               (g.name().empty() ? std::string("group") : g.name()) + " with profile " + profile.label);
    return out;
}

}  // namespace ramify
