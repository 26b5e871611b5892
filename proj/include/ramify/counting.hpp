#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "ramify/errors.hpp"
#include "ramify/group.hpp"
#include "ramify/profile.hpp"
#include "ramify/ramification.hpp"
#include "ramify/rational.hpp"

namespace ramify {

/// Order of q in (Z/nZ)^x / H, i.e. the residue degree of q in the fixed
/// field K of H inside Q(zeta_n).
inline int residue_degree(const CyclotomicProfile& profile, std::int64_t q) {
    if (profile.modulus == 1) return 1;
    if (std::gcd(q, static_cast<std::int64_t>(profile.modulus)) != 1)
        throw ComputationError("prime " + std::to_string(q) + " divides the profile modulus");
    std::int64_t x = mod(q, profile.modulus);
    int f = 1;
    while (!profile.contains(x)) {
        x = mod(x * q, profile.modulus);
        ++f;
    }
    return f;
}

/// Number of primes of K above q: [K:Q] / f.
inline int primes_above(const CyclotomicProfile& profile, std::int64_t q) {
    const auto degree = static_cast<int>(unit_group(profile.modulus).size() / profile.size());
    return degree / residue_degree(profile, q);
}

inline std::int64_t residue_norm(const CyclotomicProfile& profile, std::int64_t q) {
    std::int64_t n = 1;
    for (int i = residue_degree(profile, q); i > 0; --i) n *= q;
    return n;
}

inline void require_tame_prime(const FiniteGroup& g, std::int64_t q) {
    if (!is_prime(q)) throw ComputationError(std::to_string(q) + " is not prime");
    if (static_cast<std::int64_t>(g.order()) % q == 0)
        throw ComputationError("prime " + std::to_string(q) + " divides the group order (wild)");
}

/// [U_e : A] if Frob lies in A, else 0. Frob acts on mu_e through the norm
/// of a prime of K above q.
inline Rational local_mass(const FiniteGroup& g, const CyclotomicProfile& profile, const RamificationType& t,
                           std::int64_t q) {
    require_tame_prime(g, q);
    const std::int64_t frob = mod(residue_norm(profile, q), t.e);
    if (std::binary_search(t.stabilizer_A.begin(), t.stabilizer_A.end(), static_cast<int>(frob)))
        return Rational(t.index_U_A);
    return 0;
}

struct LocalMassTable {
    Rational unramified;
    std::vector<Rational> per_type;
};

/// (1/#G) #{(phi, tau) : phi tau phi^-1 = tau^N}, bucketed by the type of tau.
inline LocalMassTable local_mass_bruteforce(const FiniteGroup& g, const CyclotomicProfile& profile,
                                            std::int64_t q) {
    require_tame_prime(g, q);
    const auto types = ramification_types(g, profile);
    const std::int64_t norm = residue_norm(profile, q);
    std::vector<std::int64_t> counts(types.size(), 0);
    std::int64_t unramified = 0;
    for (Element tau = 0; tau < g.order(); ++tau) {
        const Element target = g.power(tau, norm);
        std::int64_t hits = 0;
        for (Element phi = 0; phi < g.order(); ++phi)
            if (g.conjugate(tau, phi) == target) ++hits;
        if (hits == 0) continue;
        if (tau == 0) unramified += hits;
        else counts[classify_tame_element(g, types, tau)] += hits;
    }
    LocalMassTable out;
    const auto order = static_cast<long>(g.order());
    out.unramified = make_rational(unramified, order);
    for (auto c : counts) out.per_type.push_back(make_rational(c, order));
    return out;
}

/// D_q = b + sum_i c_i N^{-s_i}, one factor per prime of K above q.
struct LocalFactor {
    std::int64_t prime = 0;
    std::int64_t norm = 0;
    int primes_above = 1;
    Rational b = 1;
    std::vector<Rational> c;
};

inline LocalFactor local_factor(const FiniteGroup& g, const CyclotomicProfile& profile,
                                const std::vector<RamificationType>& types, std::int64_t q) {
    require_tame_prime(g, q);
    LocalFactor f;
    f.prime = q;
    f.norm = residue_norm(profile, q);
    f.primes_above = primes_above(profile, q);
    for (const auto& t : types) f.c.push_back(local_mass(g, profile, t, q));
    return f;
}

inline LocalFactor local_factor(const FiniteGroup& g, const CyclotomicProfile& profile, std::int64_t q) {
    return local_factor(g, profile, ramification_types(g, profile), q);
}

/// Tame local factors for all primes q <= limit not dividing #G.
inline std::vector<LocalFactor> tame_factors(const FiniteGroup& g, const CyclotomicProfile& profile,
                                             std::int64_t lo, std::int64_t hi) {
    const auto types = ramification_types(g, profile);
    std::vector<LocalFactor> out;
    for (std::int64_t q : primes_up_to(hi)) {
        if (q < lo || static_cast<std::int64_t>(g.order()) % q == 0) continue;
        out.push_back(local_factor(g, profile, types, q));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Coefficient sums

struct BoxCountResult {
    std::vector<std::int64_t> X;
    Rational value;
    std::int64_t prime_bound = 0;  // largest norm among the factors used
};

inline int thread_count() {
    if (const char* env = std::getenv("RAMIFY_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

namespace detail {

struct FlatFactor {
    std::int64_t norm;
    Rational b;
    std::vector<Rational> c;
};

inline std::vector<FlatFactor> flatten(const std::vector<LocalFactor>& factors, std::size_t m) {
    std::vector<FlatFactor> out;
    for (const auto& f : factors) {
        if (f.c.size() != m) throw ComputationError("local factor has the wrong number of coefficients");
        if (f.norm < 2) throw ComputationError("local factor norm must be at least 2");
        for (int k = 0; k < f.primes_above; ++k) out.push_back({f.norm, f.b, f.c});
    }
    return out;
}

/// DFS over the b = 1 factors, sorted by descending norm. cur holds the
/// running coordinate products, limit the box.
class BoxWalker {
public:
    BoxWalker(std::vector<FlatFactor> factors, std::vector<std::int64_t> limit)
        : f_(std::move(factors)), limit_(std::move(limit)) {
        std::sort(f_.begin(), f_.end(), [](const auto& a, const auto& b) { return a.norm > b.norm; });
        for (const auto& x : f_) norms_.push_back(x.norm);
    }

    /// Sum over subsets of factors with index >= start, weighted by w.
    void walk(std::size_t start, std::vector<std::int64_t>& cur, const Rational& w, Rational& acc) const {
        acc += w;
        const std::size_t first = first_candidate(start, cur);
        for (std::size_t j = first; j < f_.size(); ++j) step(j, cur, w, acc);
    }

    /// Contributions of subsets whose largest chosen factor is j.
    void step(std::size_t j, std::vector<std::int64_t>& cur, const Rational& w, Rational& acc) const {
        const auto& fac = f_[j];
        for (std::size_t i = 0; i < cur.size(); ++i) {
            if (fac.c[i] == 0 || cur[i] > limit_[i] / fac.norm) continue;
            cur[i] *= fac.norm;
            walk(j + 1, cur, w * fac.c[i], acc);
            cur[i] /= fac.norm;
        }
    }

    std::size_t first_candidate(std::size_t start, const std::vector<std::int64_t>& cur) const {
        std::int64_t room = 0;
        for (std::size_t i = 0; i < cur.size(); ++i) room = std::max(room, limit_[i] / cur[i]);
        // norms_ descending: first index >= start with norm <= room
        auto it = std::lower_bound(norms_.begin() + static_cast<std::ptrdiff_t>(start), norms_.end(), room,
                                   [](std::int64_t a, std::int64_t r) { return a > r; });
        return static_cast<std::size_t>(it - norms_.begin());
    }

    std::size_t size() const { return f_.size(); }

private:
    std::vector<FlatFactor> f_;
    std::vector<std::int64_t> norms_;
    std::vector<std::int64_t> limit_;
};

inline Rational walk_parallel(const BoxWalker& walker, std::vector<std::int64_t> cur, const Rational& w) {
    const int threads = thread_count();
    Rational total = w;  // the empty subset
    const std::size_t first = walker.first_candidate(0, cur);
    if (threads <= 1 || walker.size() - first < 64) {
        for (std::size_t j = first; j < walker.size(); ++j) walker.step(j, cur, w, total);
        return total;
    }
    std::vector<Rational> partial(threads, Rational(0));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            auto local = cur;
            for (std::size_t j = first + t; j < walker.size(); j += threads) walker.step(j, local, w, partial[t]);
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& p : partial) total += p;
    return total;
}

}  // namespace detail

/// Exact sum of the coefficients a_x of prod_q D_q over the box x_i <= X_i.
/// Pinned coordinates (index -> value) are fixed to exactly that value and
/// their X entries are ignored.
inline BoxCountResult box_sum(const std::vector<LocalFactor>& factors, const std::vector<std::int64_t>& X,
                              const std::map<int, std::int64_t>& pins = {}, const Rational& prefactor = 1) {
    const std::size_t m = X.size();
    for (std::size_t i = 0; i < m; ++i)
        if (X[i] < 1 && !pins.count(static_cast<int>(i))) throw ComputationError("box bounds must be positive");
    for (const auto& [i, x] : pins) {
        if (i < 0 || static_cast<std::size_t>(i) >= m) throw ComputationError("pinned coordinate out of range");
        if (x < 1) throw ComputationError("pinned value must be positive");
    }
    auto flat = detail::flatten(factors, m);
    BoxCountResult result;
    result.X = X;
    for (const auto& f : flat) result.prime_bound = std::max(result.prime_bound, f.norm);

    // Pinned primes are forced; every other factor loses its pinned monomials.
    std::vector<std::int64_t> remaining(m, 1);
    for (const auto& [i, x] : pins) remaining[i] = x;
    Rational forced = prefactor;
    std::vector<detail::FlatFactor> special, plain;
    for (auto& f : flat) {
        std::vector<int> divides;
        for (const auto& [i, x] : pins)
            if (remaining[i] % f.norm == 0) divides.push_back(i);
        if (!divides.empty()) {
            for (int i : divides) {
                remaining[i] /= f.norm;
                if (remaining[i] % f.norm == 0)
                    throw ComputationError("pinned value " + std::to_string(pins.at(i)) + " is not squarefree");
            }
            // one monomial per prime: a prime shared by two pins cannot occur
            forced *= divides.size() == 1 ? f.c[divides[0]] : Rational(0);
            continue;
        }
        for (const auto& [i, x] : pins) f.c[i] = 0;
        if (f.b == 1) plain.push_back(std::move(f));
        else special.push_back(std::move(f));
    }
    for (const auto& [i, x] : pins)
        if (remaining[i] != 1)
            throw ComputationError("pinned value " + std::to_string(x) + " is not a product of listed primes");
    if (forced == 0) {
        result.value = 0;
        return result;
    }

    std::vector<std::int64_t> limit = X;
    for (const auto& [i, x] : pins) limit[i] = 1;
    const detail::BoxWalker walker(std::move(plain), limit);

    // branch explicitly over factors with b != 1
    Rational total = 0;
    std::vector<std::int64_t> cur(m, 1);
    std::function<void(std::size_t, const Rational&)> branch = [&](std::size_t k, const Rational& w) {
        if (w == 0) return;
        if (k == special.size()) {
            total += detail::walk_parallel(walker, cur, w);
            return;
        }
        const auto& f = special[k];
        branch(k + 1, w * f.b);
        for (std::size_t i = 0; i < m; ++i) {
            if (f.c[i] == 0 || cur[i] > limit[i] / f.norm) continue;
            cur[i] *= f.norm;
            branch(k + 1, w * f.c[i]);
            cur[i] /= f.norm;
        }
    };
    branch(0, forced);
    result.value = total;
    return result;
}

/// Sum over the shell delta X_i < x_i <= X_i by inclusion-exclusion over
/// the 2^m corners.
inline Rational shell_sum(const std::vector<LocalFactor>& factors, const std::vector<std::int64_t>& X,
                          const Rational& delta, const Rational& prefactor = 1) {
    if (delta <= 0 || delta >= 1) throw ComputationError("delta must lie strictly between 0 and 1");
    const std::size_t m = X.size();
    if (m > 20) throw ComputationError("too many coordinates for a shell sum");
    Rational total = 0;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<std::int64_t> corner = X;
        bool empty = false;
        int parity = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!(mask >> i & 1)) continue;
            ++parity;
            Rational lowered = delta * Rational(X[i]);
            Integer fl;
            mpz_fdiv_q(fl.get_mpz_t(), lowered.get_num_mpz_t(), lowered.get_den_mpz_t());
            corner[i] = fl.get_si();
            if (corner[i] < 1) empty = true;
        }
        if (empty) continue;
        const Rational v = box_sum(factors, corner, {}, prefactor).value;
        if (parity % 2) total -= v;
        else total += v;
    }
    return total;
}

/// Exact sum of coefficients over prod_i x_i^{h_i} <= X (h_i > 0).
inline Rational region_sum_product(const std::vector<LocalFactor>& factors, const std::vector<Rational>& h,
                                   const Rational& X, const Rational& prefactor = 1) {
    if (X <= 0) throw ComputationError("region bound must be positive");
    const std::size_t m = h.size();
    Integer common = 1;
    for (const auto& x : h) {
        if (x <= 0) throw ComputationError("region weights must be positive");
        common = lcm(common, Integer(x.get_den()));
    }
    std::vector<unsigned long> a;
    for (const auto& x : h) a.push_back(Integer(x * Rational(common)).get_ui());
    const unsigned long D = common.get_ui();
    // prod x_i^{a_i} * den^D <= num^D
    Integer rhs, lhs0;
    mpz_pow_ui(rhs.get_mpz_t(), X.get_num_mpz_t(), D);
    mpz_pow_ui(lhs0.get_mpz_t(), X.get_den_mpz_t(), D);
    if (lhs0 > rhs) return 0;

    auto flat = detail::flatten(factors, m);
    std::vector<detail::FlatFactor> special, plain;
    for (auto& f : flat) (f.b == 1 ? plain : special).push_back(std::move(f));
    std::sort(plain.begin(), plain.end(), [](const auto& x, const auto& y) { return x.norm > y.norm; });
    const unsigned long a_min = *std::min_element(a.begin(), a.end());
    std::vector<std::int64_t> norms;
    for (const auto& f : plain) norms.push_back(f.norm);

    Rational total = 0;
    std::function<void(std::size_t, const Integer&, const Rational&)> walk = [&](std::size_t start, const Integer& lhs,
                                                                                   const Rational& w) {
        total += w;
        // largest q with lhs * q^{a_min} <= rhs
        Integer room = rhs / lhs;
        mpz_root(room.get_mpz_t(), room.get_mpz_t(), a_min);
        auto it = std::lower_bound(norms.begin() + static_cast<std::ptrdiff_t>(start), norms.end(), room,
                                   [](std::int64_t q, const Integer& r) { return r < q; });
        for (auto j = static_cast<std::size_t>(it - norms.begin()); j < plain.size(); ++j) {
            for (std::size_t i = 0; i < m; ++i) {
                if (plain[j].c[i] == 0) continue;
                Integer next;
                mpz_ui_pow_ui(next.get_mpz_t(), static_cast<unsigned long>(plain[j].norm), a[i]);
                next *= lhs;
                if (next > rhs) continue;
                walk(j + 1, next, w * plain[j].c[i]);
            }
        }
    };
    std::function<void(std::size_t, const Integer&, const Rational&)> branch = [&](std::size_t k, const Integer& lhs,
                                                                                     const Rational& w) {
        if (w == 0) return;
        if (k == special.size()) {
            walk(0, lhs, w);
            return;
        }
        const auto& f = special[k];
        branch(k + 1, lhs, w * f.b);
        for (std::size_t i = 0; i < m; ++i) {
            if (f.c[i] == 0) continue;
            Integer next;
            mpz_ui_pow_ui(next.get_mpz_t(), static_cast<unsigned long>(f.norm), a[i]);
            next *= lhs;
            if (next <= rhs) branch(k + 1, next, w * f.c[i]);
        }
    };
    branch(0, lhs0, prefactor);
    return total;
}

// ---------------------------------------------------------------------------
// Abelian groups over Q

struct WildLocalCount {
    std::int64_t prime = 0;
    Integer total;                 // #Hom(Z_p^x, G)
    Integer unramified = 1;        // the trivial homomorphism
    std::vector<Integer> tame;     // per ramification type (profile Q)
    Integer wild;                  // total - unramified - sum(tame)
};

inline void require_abelian(const FiniteGroup& g) {
    if (!g.is_abelian()) throw ComputationError("group must be abelian");
}

/// #Hom(Z_p^x, G) from Z_p^x = C_{p-1} x Z_p (p odd) or C_2 x Z_2 (p = 2);
/// tame homomorphisms factor through C_{p-1}.
inline WildLocalCount wild_local_count(const FiniteGroup& g, std::int64_t p) {
    require_abelian(g);
    if (!is_prime(p)) throw ComputationError(std::to_string(p) + " is not prime");
    if (static_cast<std::int64_t>(g.order()) % p != 0)
        throw ComputationError("prime " + std::to_string(p) + " does not divide the group order");
    const std::int64_t torsion = p == 2 ? 2 : p - 1;
    std::int64_t torsion_count = 0, pro_p_count = 0;
    for (Element x = 0; x < g.order(); ++x) {
        const int o = g.element_order(x);
        if (torsion % o == 0) ++torsion_count;
        int r = o;
        while (r % p == 0) r /= static_cast<int>(p);
        if (r == 1) ++pro_p_count;
    }
    WildLocalCount out;
    out.prime = p;
    out.total = Integer(torsion_count) * Integer(pro_p_count);
    const auto types = ramification_types(g, make_profile(g.exponent(), "Q"));
    out.tame.assign(types.size(), 0);
    for (Element x = 1; x < g.order(); ++x)
        if ((p - 1) % g.element_order(x) == 0) out.tame[classify_tame_element(g, types, x)] += 1;
    out.wild = out.total - out.unramified;
    for (const auto& t : out.tame) out.wild -= t;
    return out;
}

/// Local factor at a prime dividing #G for the exact abelian count.
inline LocalFactor wild_factor(const FiniteGroup& g, std::int64_t p, bool exclude_wild) {
    const auto w = wild_local_count(g, p);
    LocalFactor f;
    f.prime = p;
    f.norm = p;
    f.b = exclude_wild ? Rational(1) : Rational(w.unramified + w.wild);
    for (const auto& t : w.tame) f.c.push_back(Rational(t));
    return f;
}

/// All local factors of the exact abelian count over Q for primes <= limit,
/// wild primes always included.
inline std::vector<LocalFactor> abelian_factors(const FiniteGroup& g, std::int64_t limit, bool exclude_wild) {
    require_abelian(g);
    const auto profile = make_profile(g.exponent(), "Q");
    auto out = tame_factors(g, profile, 2, limit);
    for (std::int64_t p : prime_factors(static_cast<std::int64_t>(g.order()))) out.push_back(wild_factor(g, p, exclude_wild));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.prime < b.prime; });
    return out;
}

/// Exact weighted count of G-extensions of Q with inv_i <= X_i, i.e.
/// (1/#G) #{continuous homs from the idele class group with bounded invariants}.
inline BoxCountResult abelian_count(const FiniteGroup& g, const std::vector<std::int64_t>& X, bool exclude_wild = false,
                                    const std::map<int, std::int64_t>& pins = {}) {
    require_abelian(g);
    const auto types = ramification_types(g, make_profile(g.exponent(), "Q"));
    if (X.size() != types.size())
        throw ComputationError("expected " + std::to_string(types.size()) + " bounds, got " + std::to_string(X.size()));
    std::int64_t limit = 1;
    for (std::size_t i = 0; i < X.size(); ++i) limit = std::max(limit, pins.count(static_cast<int>(i)) ? pins.at(static_cast<int>(i)) : X[i]);
    const auto factors = abelian_factors(g, limit, exclude_wild);
    return box_sum(factors, X, pins, make_rational(1, static_cast<long>(g.order())));
}

// ---------------------------------------------------------------------------

struct MalleExponents {
    Rational a;
    int b = 0;
    bool infinite = false;  // some h_i <= 0: the count is not finite
};

inline MalleExponents malle_exponents(const std::vector<Rational>& h) {
    if (h.empty()) throw ComputationError("empty weight vector");
    MalleExponents out;
    out.a = *std::min_element(h.begin(), h.end());
    out.b = static_cast<int>(std::count(h.begin(), h.end(), out.a));
    out.infinite = out.a <= 0;
    return out;
}

}  // namespace ramify
