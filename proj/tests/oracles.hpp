#pragma once

// Independent reference computations used by the tests. Nothing here calls
// the library algorithm it is meant to check.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <vector>

#include "ramify/character.hpp"
#include "ramify/group.hpp"
#include "ramify/ramification.hpp"
#include "ramify/rational.hpp"

namespace oracle {

using ramify::Element;
using ramify::FiniteGroup;
using ramify::Rational;

/// Conjugacy classes by direct orbit computation, as sorted member sets.
inline std::set<std::vector<Element>> classes(const FiniteGroup& g) {
    const auto& t = g.table();
    const std::size_t n = t.size();
    std::vector<Element> inv(n);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            if (t[a][b] == 0) inv[a] = b;
    std::set<std::vector<Element>> out;
    std::vector<bool> done(n, false);
    for (Element a = 0; a < n; ++a) {
        if (done[a]) continue;
        std::set<Element> orbit;
        for (Element x = 0; x < n; ++x) orbit.insert(t[t[x][a]][inv[x]]);
        for (Element y : orbit) done[y] = true;
        out.insert(std::vector<Element>(orbit.begin(), orbit.end()));
    }
    return out;
}

inline Element power(const FiniteGroup& g, Element a, std::int64_t k) {
    Element r = 0;
    for (std::int64_t i = 0; i < k; ++i) r = g.table()[r][a];
    return r;
}

inline int order(const FiniteGroup& g, Element a) {
    int k = 1;
    for (Element y = a; y != 0; y = g.table()[y][a]) ++k;
    return k;
}

/// Number of G x U_e orbits of pairs (I, gamma: I -> mu_e), I cyclic of
/// order e > 1, with U_e the residues of the profile subgroup mod e. A pair
/// is stored as (sorted I, the element sent to zeta_e); the twist by k
/// sends gamma to gamma^k, whose preimage of zeta_e is g^(k^-1 mod e).
inline std::size_t pair_orbits(const FiniteGroup& g, const std::vector<int>& subgroup, int modulus) {
    const std::size_t n = g.order();
    std::vector<Element> inv(n);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            if (g.table()[a][b] == 0) inv[a] = b;
    // every pair is determined by its distinguished generator
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (Element x = 1; x < n; ++x) {
        const int e = order(g, x);
        for (Element c = 0; c < n; ++c) unite(x, g.table()[g.table()[c][x]][inv[c]]);
        for (int k : subgroup) {
            const int km = static_cast<int>(ramify::mod(modulus == 1 ? 1 : k, e));
            int kinv = 1;
            while (kinv * km % e != 1 % e) ++kinv;
            unite(x, power(g, x, kinv));
        }
    }
    std::set<int> roots;
    for (Element x = 1; x < n; ++x) roots.insert(find(x));
    return roots.size();
}

/// Coefficient map of prod_q (b_q + sum_i c_{q,i} q^{-s_i}) truncated to
/// the box, built by multiplying out one factor at a time.
struct NaiveFactor {
    std::int64_t q;
    Rational b;
    std::vector<Rational> c;
};

inline Rational naive_box(const std::vector<NaiveFactor>& factors, const std::vector<std::int64_t>& X,
                          const Rational& prefactor = 1) {
    const std::size_t m = X.size();
    std::map<std::vector<std::int64_t>, Rational> poly;
    poly[std::vector<std::int64_t>(m, 1)] = prefactor;
    for (const auto& f : factors) {
        std::map<std::vector<std::int64_t>, Rational> next;
        for (const auto& [key, coef] : poly) {
            if (f.b != 0) next[key] += coef * f.b;
            for (std::size_t i = 0; i < m; ++i) {
                if (f.c[i] == 0) continue;
                auto k = key;
                k[i] *= f.q;
                if (k[i] > X[i]) continue;
                next[k] += coef * f.c[i];
            }
        }
        poly = std::move(next);
    }
    Rational total = 0;
    for (const auto& [key, coef] : poly) total += coef;
    return total;
}

/// #{odd squarefree n <= X} by a sieve over squares of primes.
inline std::int64_t odd_squarefree_count(std::int64_t X) {
    std::vector<bool> bad(static_cast<std::size_t>(X) + 1, false);
    for (std::int64_t p = 3; p * p <= X; p += 2)
        for (std::int64_t k = p * p; k <= X; k += p * p) bad[k] = true;
    std::int64_t count = 0;
    for (std::int64_t n = 1; n <= X; n += 2)
        if (!bad[n]) ++count;
    return count;
}

/// Multiplication table of (Z/mZ)^x with elements listed as residues.
struct UnitGroup {
    std::vector<std::int64_t> residues;
    FiniteGroup group;
};

inline UnitGroup unit_group_table(std::int64_t m) {
    std::vector<std::int64_t> res;
    for (std::int64_t k = 1; k < m; ++k)
        if (std::gcd(k, m) == 1) res.push_back(k);
    if (m == 2) res = {1};
    std::map<std::int64_t, Element> index;
    for (std::size_t i = 0; i < res.size(); ++i) index[res[i]] = static_cast<Element>(i);
    FiniteGroup::Table t(res.size(), std::vector<Element>(res.size()));
    for (std::size_t a = 0; a < res.size(); ++a)
        for (std::size_t b = 0; b < res.size(); ++b) t[a][b] = index.at(res[a] * res[b] % m);
    return {res, FiniteGroup::from_table(std::move(t), "U" + std::to_string(m))};
}

/// Every map (Z/mZ)^x -> G that is a homomorphism, found by checking all
/// assignments on a generating set of the unit group.
inline std::vector<std::vector<Element>> unit_homs(const UnitGroup& u, const FiniteGroup& g) {
    const auto& src = u.group;
    // generating set: greedily add elements until everything is reached
    std::vector<Element> gens;
    std::set<Element> reached{0};
    while (reached.size() < src.order()) {
        Element pick = 0;
        for (Element x = 0; x < src.order(); ++x)
            if (!reached.count(x)) {
                pick = x;
                break;
            }
        gens.push_back(pick);
        std::vector<Element> frontier(reached.begin(), reached.end());
        for (std::size_t i = 0; i < frontier.size(); ++i)
            for (Element s : gens) {
                const Element y = src.table()[frontier[i]][s];
                if (reached.insert(y).second) frontier.push_back(y);
            }
    }
    std::vector<std::vector<Element>> out;
    std::vector<Element> img(gens.size(), 0);
    while (true) {
        std::vector<Element> map(src.order(), ~Element{0});
        map[0] = 0;
        std::vector<Element> queue{0};
        bool ok = true;
        for (std::size_t i = 0; i < queue.size() && ok; ++i)
            for (std::size_t k = 0; k < gens.size(); ++k) {
                const Element y = src.table()[queue[i]][gens[k]];
                const Element fy = g.table()[map[queue[i]]][img[k]];
                if (map[y] == ~Element{0}) {
                    map[y] = fy;
                    queue.push_back(y);
                } else if (map[y] != fy) {
                    ok = false;
                    break;
                }
            }
        if (ok)
            for (Element a = 0; a < src.order() && ok; ++a)
                for (Element b = 0; b < src.order() && ok; ++b)
                    ok = map[src.table()[a][b]] == g.table()[map[a]][map[b]];
        if (ok) out.push_back(map);
        std::size_t k = 0;
        while (k < img.size() && ++img[k] == g.order()) img[k++] = 0;
        if (k == img.size()) break;
    }
    return out;
}

/// dim V^H from character values in floating point.
inline double fixed_dim(const ramify::Character& psi, const ramify::ElementSet& h) {
    std::complex<double> s = 0;
    for (Element x : h) s += psi(x).to_complex();
    return (s / static_cast<double>(h.size())).real();
}

/// Tame part of the fine conductor from eigenvalue multiplicities of zeta_e0^dd
/// on I, read off the label of each element.
inline double numeric_tame(const ramify::RamificationDatum& d, const ramify::Character& psi) {
    double total = 0;
    for (int dd = 1; dd < d.e0; ++dd) {
        if (d.e0 % dd != 0) continue;
        std::complex<double> m = 0;
        for (std::size_t i = 0; i < d.inertia.size(); ++i) {
            const double angle = 2 * std::numbers::pi * d.label[i] * dd / d.e0;
            m += psi(d.inertia[i]).to_complex() * std::polar(1.0, -angle);
        }
        m /= static_cast<double>(d.inertia.size());
        total += static_cast<double>(ramify::euler_phi(d.e0 / dd)) * m.real();
    }
    return total;
}

}  // namespace oracle
