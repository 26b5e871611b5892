#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "ramify/cyclotomic.hpp"
#include "ramify/errors.hpp"
#include "ramify/group.hpp"
#include "ramify/profile.hpp"

namespace ramify {

/// Class function on a group, one exact value per conjugacy class.
/// Covers genuine, virtual and orbit-sum characters alike.
struct Character {
    FiniteGroup group;
    std::vector<Cyclotomic> values;

    Character() = default;
    Character(FiniteGroup g, std::vector<Cyclotomic> v) : group(std::move(g)), values(std::move(v)) {
        if (values.size() != group.class_count()) throw ComputationError("character needs one value per class");
    }

    static Character trivial(const FiniteGroup& g) { return {g, std::vector<Cyclotomic>(g.class_count(), 1L)}; }
    static Character zero(const FiniteGroup& g) { return {g, std::vector<Cyclotomic>(g.class_count(), 0L)}; }

    const Cyclotomic& operator()(Element x) const { return values[group.class_of(x)]; }
    const Cyclotomic& degree() const { return values[0]; }

    Character galois(std::int64_t k) const {
        Character out = *this;
        for (auto& v : out.values) v = v.galois(k);
        return out;
    }

    Character conj() const { return galois(-1); }

    /// psi o phi, a class function on the source of phi.
    Character pullback(const GroupHom& phi) const {
        std::vector<Cyclotomic> v;
        v.reserve(phi.source.class_count());
        for (const auto& c : phi.source.classes()) v.push_back((*this)(phi(c.representative)));
        return {phi.source, std::move(v)};
    }

    Character& operator+=(const Character& o) {
        for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
        return *this;
    }
    Character& operator-=(const Character& o) {
        for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
        return *this;
    }
    Character& operator*=(const Rational& q) {
        for (auto& v : values) v *= q;
        return *this;
    }

    friend Character operator+(Character a, const Character& b) { return a += b; }
    friend Character operator-(Character a, const Character& b) { return a -= b; }
    friend Character operator*(Character a, const Rational& q) { return a *= q; }

    friend bool operator==(const Character& a, const Character& b) { return a.values == b.values; }
};

/// A class function on a subgroup H, stored per element of the sorted set H.
struct SubgroupCharacter {
    ElementSet elements;
    std::vector<Cyclotomic> values;

    const Cyclotomic& at(Element x) const {
        auto it = std::lower_bound(elements.begin(), elements.end(), x);
        if (it == elements.end() || *it != x) throw ComputationError("element outside the subgroup");
        return values[it - elements.begin()];
    }
};

struct CharacterTable {
    FiniteGroup group;
    std::vector<Character> rows;  // absolutely irreducible; rows[0] trivial
    std::int64_t prime = 0;       // modulus used by the modular construction

    std::size_t size() const { return rows.size(); }
};

// ---------------------------------------------------------------------------
// Inner products

/// (1/|H|) sum_{h in H} f1(h) conj(f2(h)) over an element set.
template <class F1, class F2>
Cyclotomic inner_product_on(const ElementSet& h, F1&& f1, F2&& f2) {
    Cyclotomic sum;
    for (Element x : h) sum += f1(x) * f2(x).conj();
    sum *= Rational(1, static_cast<unsigned long>(h.size()));
    return sum;
}

/// <psi1, psi2>_G via class sizes.
inline Cyclotomic inner_product(const Character& a, const Character& b) {
    const auto& g = a.group;
    Cyclotomic sum;
    for (const auto& c : g.classes())
        sum += a.values[c.id] * b.values[c.id].conj() * Rational(static_cast<long>(c.size()));
    sum *= Rational(1, static_cast<unsigned long>(g.order()));
    return sum;
}

/// <psi1, psi2>_H for a subgroup H given as an element set.
inline Cyclotomic inner_product(const Character& a, const Character& b, const ElementSet& h) {
    if (!is_subgroup(a.group, h)) throw ComputationError("inner product over a set that is not a subgroup");
    return inner_product_on(
        h, [&](Element x) -> const Cyclotomic& { return a(x); }, [&](Element x) -> const Cyclotomic& { return b(x); });
}

inline SubgroupCharacter restrict(const Character& psi, const ElementSet& h) {
    if (!is_subgroup(psi.group, h)) throw ComputationError("restriction to a set that is not a subgroup");
    SubgroupCharacter out{h, {}};
    out.values.reserve(h.size());
    for (Element x : h) out.values.push_back(psi(x));
    return out;
}

/// Ind_H^G omega (g) = (1/|H|) sum_{x in G, x g x^-1 in H} omega(x g x^-1).
inline Character induce(const SubgroupCharacter& omega, const FiniteGroup& g) {
    if (!is_subgroup(g, omega.elements)) throw ComputationError("induction from a set that is not a subgroup");
    std::vector<Cyclotomic> values;
    values.reserve(g.class_count());
    for (const auto& c : g.classes()) {
        Cyclotomic sum;
        for (Element x = 0; x < g.order(); ++x) {
            const Element y = g.conjugate(c.representative, x);
            if (set_contains(omega.elements, y)) sum += omega.at(y);
        }
        sum *= Rational(1, static_cast<unsigned long>(omega.elements.size()));
        values.push_back(std::move(sum));
    }
    return {g, std::move(values)};
}

/// Multiplicities of psi against the irreducible rows; throws if psi is
/// not a virtual character (non-integral multiplicity).
inline std::vector<Integer> decompose(const CharacterTable& table, const Character& psi) {
    std::vector<Integer> out;
    for (const auto& row : table.rows) {
        Cyclotomic m = inner_product(psi, row);
        if (!m.is_rational() || !is_integer(m.rational_value()))
            throw ComputationError("class function is not a virtual character");
        out.push_back(m.rational_value().get_num());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Modular (Dixon-Burnside) character table

namespace detail {

using ModVec = std::vector<std::int64_t>;

/// Basis of the right kernel of an r x c matrix over F_p.
inline std::vector<ModVec> kernel_mod(std::vector<ModVec> a, std::int64_t p) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        const std::int64_t inv = invmod(a[r][c], p);
        for (auto& x : a[r]) x = x * inv % p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const std::int64_t f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] = mod(a[i][j] - f * a[r][j], p);
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<ModVec> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        ModVec v(cols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = mod(-a[i][free], p);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::int64_t primitive_root_mod(std::int64_t p) {
    const auto factors = prime_factors(p - 1);
    for (std::int64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (std::int64_t q : factors)
            if (powmod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    return 1;  // p = 2
}

/// Smallest prime p = 1 (mod n) with p > 2 sqrt(order).
inline std::int64_t dixon_prime(std::int64_t n, std::int64_t order) {
    const double bound = 2.0 * std::sqrt(static_cast<double>(order));
    for (std::int64_t p = n + 1;; p += n) {
        if (static_cast<double>(p) > bound && is_prime(p)) return p;
        if (p > (std::int64_t{1} << 40)) throw ComputationError("no suitable prime for the character table");
    }
}

}  // namespace detail

/// Complete table of absolutely irreducible characters, values exact at
/// level exponent(G). Rows: trivial first, then by degree and decreasing
/// lexicographic value vectors.
inline CharacterTable character_table(const FiniteGroup& g) {
    const std::size_t r = g.class_count();
    const std::int64_t order = static_cast<std::int64_t>(g.order());
    const int n = g.exponent();
    const std::int64_t p = detail::dixon_prime(n, order);
    const auto& classes = g.classes();

    // coeff[j][i][k] = #{x in C_j : x^-1 z_k in C_i} for fixed z_k in C_k
    std::vector<std::vector<std::vector<std::int64_t>>> coeff(
        r, std::vector<std::vector<std::int64_t>>(r, std::vector<std::int64_t>(r, 0)));
    for (std::size_t k = 0; k < r; ++k) {
        const Element z = classes[k].representative;
        for (Element x = 0; x < g.order(); ++x) {
            const int j = g.class_of(x);
            const int i = g.class_of(g.mul(g.inverse(x), z));
            ++coeff[j][i][k];
        }
    }

    // Split F_p^r into common eigenspaces of the class-multiplication matrices
    // M_j (M_j)_{ik} = coeff[j][i][k].
    std::vector<std::vector<detail::ModVec>> spaces;
    {
        std::vector<detail::ModVec> basis;
        for (std::size_t i = 0; i < r; ++i) {
            detail::ModVec e(r, 0);
            e[i] = 1;
            basis.push_back(e);
        }
        spaces.push_back(std::move(basis));
    }
    for (std::size_t j = 0; j < r; ++j) {
        if (std::all_of(spaces.begin(), spaces.end(), [](const auto& s) { return s.size() == 1; })) break;
        std::vector<std::vector<detail::ModVec>> next;
        for (auto& space : spaces) {
            if (space.size() == 1) {
                next.push_back(std::move(space));
                continue;
            }
            // (M_j) applied to each basis vector
            std::vector<detail::ModVec> image(space.size(), detail::ModVec(r, 0));
            for (std::size_t b = 0; b < space.size(); ++b)
                for (std::size_t i = 0; i < r; ++i) {
                    std::int64_t s = 0;
                    for (std::size_t k = 0; k < r; ++k) s += coeff[j][i][k] % p * space[b][k] % p;
                    image[b][i] = s % p;
                }
            std::size_t found = 0;
            for (std::int64_t lambda = 0; lambda < p && found < space.size(); ++lambda) {
                // rows i, columns b: (M_j - lambda) B
                std::vector<detail::ModVec> mat(r, detail::ModVec(space.size(), 0));
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t b = 0; b < space.size(); ++b)
                        mat[i][b] = mod(image[b][i] - lambda * space[b][i], p);
                auto ker = detail::kernel_mod(std::move(mat), p);
                if (ker.empty()) continue;
                std::vector<detail::ModVec> sub;
                for (const auto& coef : ker) {
                    detail::ModVec v(r, 0);
                    for (std::size_t b = 0; b < space.size(); ++b)
                        for (std::size_t i = 0; i < r; ++i) v[i] = (v[i] + coef[b] * space[b][i]) % p;
                    sub.push_back(std::move(v));
                }
                found += sub.size();
                next.push_back(std::move(sub));
            }
            if (found != space.size())
                throw ComputationError("class-multiplication matrix not diagonalizable mod " + std::to_string(p));
        }
        spaces = std::move(next);
    }
    if (spaces.size() != r) throw ComputationError("eigenspace splitting did not reach one-dimensional spaces");

    const std::int64_t z = powmod(detail::primitive_root_mod(p), (p - 1) / n, p);
    std::vector<Cyclotomic> roots;
    for (int l = 0; l < n; ++l) roots.push_back(Cyclotomic::root_of_unity(n, l));

    std::vector<Character> rows;
    for (const auto& space : spaces) {
        detail::ModVec w = space[0];
        if (w[0] == 0) throw ComputationError("eigenvector vanishes on the identity class");
        const std::int64_t inv0 = invmod(w[0], p);
        for (auto& x : w) x = x * inv0 % p;
        // chi(1)^2 = |G| / sum_k w_k w_{k*} / |C_k|
        std::int64_t s = 0;
        for (std::size_t k = 0; k < r; ++k) {
            const int kstar = g.class_of(g.inverse(classes[k].representative));
            s = (s + w[k] * w[kstar] % p * invmod(static_cast<std::int64_t>(classes[k].size()), p)) % p;
        }
        const std::int64_t deg_sq = order % p * invmod(s, p) % p;
        std::int64_t degree = 0;
        for (std::int64_t d = 1; d * d <= order; ++d)
            if (d * d % p == deg_sq) {
                degree = d;
                break;
            }
        if (degree == 0) throw ComputationError("could not recover a character degree");
        std::vector<std::int64_t> chi_mod(r);
        for (std::size_t k = 0; k < r; ++k)
            chi_mod[k] = degree * w[k] % p * invmod(static_cast<std::int64_t>(classes[k].size()), p) % p;

        std::vector<Cyclotomic> values;
        for (std::size_t k = 0; k < r; ++k) {
            const Element x = classes[k].representative;
            const int o = g.element_order(x);
            const std::int64_t zo = powmod(z, n / o, p);
            const std::int64_t inv_o = invmod(o, p);
            Cyclotomic value;
            std::vector<Rational> coeffs(detail::cyclotomic_level(n).degree, Rational(0));
            for (int l = 0; l < o; ++l) {
                std::int64_t m = 0;
                for (int e = 0; e < o; ++e) {
                    const std::int64_t chi = chi_mod[g.class_of(g.power(x, e))];
                    m = (m + chi * powmod(zo, mod(-static_cast<std::int64_t>(e) * l, o), p)) % p;
                }
                m = m * inv_o % p;
                if (m > degree) throw ComputationError("eigenvalue multiplicity out of range");
                if (m == 0) continue;
                const auto& mono = roots[static_cast<std::size_t>(l) * (n / o)].coefficients();
                for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += mono[i] * m;
            }
            values.push_back(Cyclotomic::from_coefficients(n, std::move(coeffs)));
        }
        rows.emplace_back(g, std::move(values));
    }

    auto is_trivial = [](const Character& c) {
        return std::all_of(c.values.begin(), c.values.end(), [](const Cyclotomic& v) { return v == Cyclotomic(1L); });
    };
    std::sort(rows.begin(), rows.end(), [&](const Character& a, const Character& b) {
        const bool ta = is_trivial(a), tb = is_trivial(b);
        if (ta != tb) return ta;
        const int dc = compare(a.degree(), b.degree());
        if (dc != 0) return dc < 0;
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            const int c = compare(a.values[i], b.values[i]);
            if (c != 0) return c > 0;
        }
        return false;
    });
    return {g, std::move(rows), p};
}

/// Row orthogonality, degree-sum and integrality checks; returns a
/// description of the first failure or an empty string.
inline std::string check_character_table(const CharacterTable& t) {
    const auto& g = t.group;
    if (t.rows.size() != g.class_count()) return "row count differs from class count";
    Rational degree_sum = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& d = t.rows[i].degree();
        if (!d.is_rational()) return "non-rational degree in row " + std::to_string(i);
        degree_sum += d.rational_value() * d.rational_value();
        for (const auto& v : t.rows[i].values)
            if (!v.is_algebraic_integer()) return "non-integral value in row " + std::to_string(i);
        for (std::size_t j = i; j < t.rows.size(); ++j) {
            const Cyclotomic ip = inner_product(t.rows[i], t.rows[j]);
            if (!(ip == Cyclotomic(i == j ? 1L : 0L)))
                return "rows " + std::to_string(i) + "," + std::to_string(j) + " not orthonormal";
        }
    }
    if (degree_sum != Rational(static_cast<long>(g.order()))) return "degree squares do not sum to the order";
    // column orthogonality: sum_chi chi(g) conj(chi(h)) = |C_G(g)| delta
    for (std::size_t a = 0; a < g.class_count(); ++a)
        for (std::size_t b = a; b < g.class_count(); ++b) {
            Cyclotomic s;
            for (const auto& row : t.rows) s += row.values[a] * row.values[b].conj();
            const long expected = a == b ? static_cast<long>(g.order() / g.classes()[a].size()) : 0L;
            if (!(s == Cyclotomic(expected)))
                return "columns " + std::to_string(a) + "," + std::to_string(b) + " not orthogonal";
        }
    return {};
}

/// Nontrivial irreducible rows grouped into orbits under the profile's
/// Galois action; one summed character per orbit, ordered by the first
/// row of each orbit. Schur indices are not applied.
inline std::vector<Character> galois_orbit_characters(const CharacterTable& table, const CyclotomicProfile& profile) {
    if (profile.modulus != table.group.exponent())
        throw ComputationError("profile modulus " + std::to_string(profile.modulus) + " differs from exponent " +
                               std::to_string(table.group.exponent()));
    const std::size_t r = table.rows.size();
    std::vector<int> orbit_of(r, -1);
    std::vector<std::vector<std::size_t>> orbits;
    for (std::size_t i = 1; i < r; ++i) {
        if (orbit_of[i] >= 0) continue;
        std::vector<std::size_t> orbit;
        for (int k : profile.subgroup) {
            const Character image = table.rows[i].galois(profile.modulus == 1 ? 1 : k);
            for (std::size_t j = 1; j < r; ++j)
                if (orbit_of[j] < 0 && table.rows[j] == image) {
                    orbit_of[j] = static_cast<int>(orbits.size());
                    orbit.push_back(j);
                }
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
    std::vector<Character> out;
    for (const auto& orbit : orbits) {
        Character sum = Character::zero(table.group);
        for (std::size_t j : orbit) sum += table.rows[j];
        out.push_back(std::move(sum));
    }
    return out;
}

/// Orbit sums under the full Galois group, trivial character included
/// first; an integral basis of the rational virtual characters.
inline std::vector<Character> rational_basis(const CharacterTable& table) {
    std::vector<Character> out{table.rows[0]};
    auto orbits = galois_orbit_characters(table, make_profile(table.group.exponent(), "Q"));
    out.insert(out.end(), orbits.begin(), orbits.end());
    return out;
}

}  // namespace ramify
