#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "ramify/counting.hpp"
#include "ramify/errors.hpp"
#include "ramify/profile.hpp"
#include "ramify/ramification.hpp"

namespace ramify {

/// Dirichlet characters mod n, described by discrete logarithms with
/// respect to a fixed basis of (Z/nZ)^x.
class DirichletGroup {
public:
    explicit DirichletGroup(int n) : n_(n), logs_(n) {
        if (n < 1) throw ComputationError("modulus must be positive");
        // cyclic components of (Z/p^a)^x, lifted through CRT
        std::int64_t rest = n;
        std::vector<std::pair<std::int64_t, std::int64_t>> parts;  // (p, p^a)
        for (std::int64_t p : prime_factors(n)) {
            std::int64_t pa = 1;
            while (rest % p == 0) {
                rest /= p;
                pa *= p;
            }
            parts.push_back({p, pa});
        }
        struct Gen {
            std::int64_t modulus, generator, order;
        };
        std::vector<Gen> gens;
        for (auto [p, pa] : parts) {
            if (p == 2) {
                if (pa >= 4) gens.push_back({pa, pa - 1, 2});
                if (pa >= 8) gens.push_back({pa, 5, pa / 4});
            } else {
                const std::int64_t phi = pa / p * (p - 1);
                std::int64_t g = 2;
                for (;; ++g) {
                    if (std::gcd(g, p) != 1) continue;
                    bool ok = true;
                    for (std::int64_t r : prime_factors(phi))
                        if (powmod(g, phi / r, pa) == 1) {
                            ok = false;
                            break;
                        }
                    if (ok) break;
                }
                gens.push_back({pa, g, phi});
            }
        }
        for (const auto& g : gens) orders_.push_back(g.order);
        for (int k = 0; k < n; ++k) {
            if (std::gcd(k, n) != 1 && n != 1) continue;
            std::vector<std::int64_t> log(gens.size(), 0);
            // Z/2^a with both generators: k = (-1)^s 5^t
            for (std::size_t i = 0; i < gens.size(); ++i) {
                const auto& g = gens[i];
                std::int64_t target = mod(k, g.modulus);
                if (g.modulus % 2 == 0 && g.generator == g.modulus - 1) {
                    // sign component for powers of two
                    log[i] = mod(target, 4) == 3 ? 1 : 0;
                    continue;
                }
                if (g.modulus % 2 == 0) {
                    if (mod(target, 4) == 3) target = mod(-target, g.modulus);
                }
                std::int64_t x = 1;
                std::int64_t e = 0;
                while (x != target) {
                    x = mod(x * g.generator, g.modulus);
                    ++e;
                    if (e > g.order) throw ComputationError("internal: discrete log failed");
                }
                log[i] = e;
            }
            logs_[k] = std::move(log);
        }
        std::int64_t count = 1;
        for (auto o : orders_) count *= o;
        size_ = count;
    }

    int modulus() const { return n_; }
    std::int64_t size() const { return size_; }

    /// Character index -> exponent vector (mixed radix over the orders).
    std::vector<std::int64_t> exponents(std::int64_t index) const {
        std::vector<std::int64_t> e(orders_.size());
        for (std::size_t i = orders_.size(); i-- > 0;) {
            e[i] = index % orders_[i];
            index /= orders_[i];
        }
        return e;
    }

    /// chi(k) as a fraction of a full turn in [0,1), or nullopt when gcd(k,n) > 1.
    std::optional<Rational> angle(const std::vector<std::int64_t>& chi, std::int64_t k) const {
        const std::int64_t r = mod(k, n_);
        if (n_ != 1 && std::gcd(r, static_cast<std::int64_t>(n_)) != 1) return std::nullopt;
        Rational a = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) a += make_rational(chi[i] * logs_[r][i], orders_[i]);
        Integer fl;
        mpz_fdiv_q(fl.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
        a -= Rational(fl);
        return a;
    }

    std::complex<double> value(const std::vector<std::int64_t>& chi, std::int64_t k) const {
        const auto a = angle(chi, k);
        if (!a) return 0.0;
        return std::polar(1.0, 2.0 * std::numbers::pi * a->get_d());
    }

    /// Nontrivial characters trivial on every residue of the subgroup.
    std::vector<std::vector<std::int64_t>> nontrivial_characters_trivial_on(const std::vector<int>& subgroup) const {
        std::vector<std::vector<std::int64_t>> out;
        for (std::int64_t idx = 1; idx < size_; ++idx) {
            auto chi = exponents(idx);
            bool trivial = true;
            for (int b : subgroup)
                if (*angle(chi, b) != 0) {
                    trivial = false;
                    break;
                }
            if (trivial) out.push_back(std::move(chi));
        }
        return out;
    }

private:
    int n_;
    std::vector<std::vector<std::int64_t>> logs_;
    std::vector<std::int64_t> orders_;
    std::int64_t size_ = 1;
};

struct LValue {
    std::complex<double> value;
    double error = 0;  // bound on the truncation tail
};

/// L(1, chi) = sum_{k<=N} chi(k)/k with the Abel-summation tail bound
/// |tail| <= max partial character sum / (N+1) <= phi(n)/(N+1).
inline LValue l_value_at_one(const DirichletGroup& group, const std::vector<std::int64_t>& chi, std::int64_t terms) {
    const int n = group.modulus();
    std::vector<std::complex<double>> period(n);
    for (int k = 0; k < n; ++k) period[k] = group.value(chi, k);
    std::complex<double> sum = 0;
    for (std::int64_t k = 1; k <= terms; ++k) sum += period[k % n] / static_cast<double>(k);
    return {sum, static_cast<double>(euler_phi(n)) / static_cast<double>(terms + 1)};
}

enum class WildMode { skip, abelian_exact };

struct ConstantOptions {
    std::int64_t prime_bound = 100000;
    std::int64_t lseries_terms = 1000000;
    std::optional<WildMode> wild_mode;  // unset: abelian-exact for abelian G under Q, else skip
    std::map<int, std::int64_t> pins;  // boundary constant C' for pinned coordinates
    double tolerance = std::numeric_limits<double>::infinity();
};

struct ConstantEstimate {
    double value = 0;
    double error_bound = 0;
    std::vector<double> residues;         // r_i
    std::vector<double> residue_errors;   // bound per r_i
    double finite_product = 1;            // primes q <= E0 (pinned primes: forced coefficients)
    double tail_product = 1;              // primes E0 < q <= P of D_q / prod_i D_{q,i}
    double wild_factor = 1;               // part of finite_product coming from primes dividing #G
    std::int64_t e0 = 1;
    std::vector<std::string> caveats;
};

namespace detail {

inline double factor_at_one(const Rational& b, const std::vector<Rational>& c, const std::vector<bool>& keep,
                            std::int64_t norm, int copies) {
    double v = b.get_d();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (keep[i]) v += c[i].get_d() / static_cast<double>(norm);
    return std::pow(v, copies);
}

}  // namespace detail

/// Leading constant C of the multivariate Tauberian asymptotic for the heuristic series,
/// including the normalization 1/#G. For pinned coordinates T this is the
/// boundary constant C' of prod_{i not in T} X_i.
inline ConstantEstimate predicted_constant(const FiniteGroup& g, const CyclotomicProfile& profile,
                                           const ConstantOptions& opt = {}) {
    require_profile_matches(g, profile);
    if (opt.prime_bound < 2) throw ComputationError("prime bound must be at least 2");
    if (opt.lseries_terms < 1) throw ComputationError("L-series length must be positive");
    const auto types = ramification_types(g, profile);
    const std::size_t m = types.size();
    const auto order = static_cast<std::int64_t>(g.order());
    for (const auto& [i, x] : opt.pins) {
        if (i < 0 || static_cast<std::size_t>(i) >= m) throw ComputationError("pinned coordinate out of range");
        if (x < 1) throw ComputationError("pinned value must be positive");
    }
    std::vector<bool> keep(m, true);
    for (const auto& [i, x] : opt.pins) keep[i] = false;

    ConstantEstimate out;
    const auto order_primes = prime_factors(order);
    out.e0 = order_primes.empty() ? 1 : order_primes.back();
    const bool abelian_q = g.is_abelian() && profile == make_profile(profile.modulus, "Q");
    const WildMode wild_mode = opt.wild_mode.value_or(abelian_q ? WildMode::abelian_exact : WildMode::skip);
    if (wild_mode == WildMode::abelian_exact) {
        require_abelian(g);
        if (!(profile == make_profile(profile.modulus, "Q")))
            throw ComputationError("abelian-exact wild factors need the profile Q");
    } else if (!order_primes.empty()) {
        out.caveats.push_back("wild primes treated as D_p = 1");
    }

    // local data for a rational prime q: (norm, copies, b, c)
    auto local = [&](std::int64_t q) {
        LocalFactor f;
        if (order % q == 0) {
            if (wild_mode == WildMode::abelian_exact) return wild_factor(g, q, false);
            f.prime = q;
            f.norm = q;
            f.c.assign(m, 0);
            return f;
        }
        return local_factor(g, profile, types, q);
    };

    // pinned coordinates: prime -> coordinate
    std::map<std::int64_t, std::vector<int>> pinned_primes;
    for (const auto& [i, x] : opt.pins) {
        std::int64_t rest = x;
        for (std::int64_t q : prime_factors(x)) {
            pinned_primes[q].push_back(i);
            rest /= q;
            if (rest % q == 0) throw ComputationError("pinned value " + std::to_string(x) + " is not squarefree");
        }
    }
    double log_error = 0;
    double finite = 1.0 / static_cast<double>(order);
    for (const auto& [q, coords] : pinned_primes) {
        if (q > opt.prime_bound) throw ComputationError("pinned prime exceeds the prime bound");
        const auto f = local(q);
        if (f.primes_above != 1 || f.norm != q)
            throw ComputationError("pinned primes must split into primes of norm q");
        const double c = coords.size() == 1 ? f.c[coords[0]].get_d() : 0.0;
        finite *= c;
    }
    for (std::int64_t q : primes_up_to(out.e0)) {
        if (pinned_primes.count(q)) continue;
        const auto f = local(q);
        const double v = detail::factor_at_one(f.b, f.c, keep, f.norm, f.primes_above);
        finite *= v;
        if (order % q == 0) out.wild_factor *= v;
    }
    out.finite_product = finite * static_cast<double>(order);

    // residues r_i for the free coordinates
    const DirichletGroup dir(profile.modulus);
    const auto primes = primes_up_to(opt.prime_bound);
    out.residues.assign(m, 1.0);
    out.residue_errors.assign(m, 0.0);
    double value = finite;
    for (std::size_t i = 0; i < m; ++i) {
        if (!keep[i]) continue;
        const auto& t = types[i];
        std::vector<int> b_sub;
        for (int k : profile.subgroup)
            if (std::binary_search(t.stabilizer_A.begin(), t.stabilizer_A.end(), static_cast<int>(mod(k, t.e))))
                b_sub.push_back(k);
        const auto chars = dir.nontrivial_characters_trivial_on(b_sub);
        std::complex<double> r = 1;
        double rel = 0;
        for (const auto& chi : chars) {
            const auto l = l_value_at_one(dir, chi, opt.lseries_terms);
            r *= l.value;
            const double mag = std::abs(l.value) - l.error;
            if (mag <= 0) throw ComputationError("L-series too short to bound L(1,chi) away from zero");
            rel += l.error / mag;
        }
        double log_r = std::log(std::abs(r));
        double c_max = 0;
        for (std::int64_t q : primes) {
            // local zeta factor of F_i at q
            std::complex<double> z = 1.0 - 1.0 / static_cast<double>(q);
            for (const auto& chi : chars) z *= 1.0 - dir.value(chi, q) / static_cast<double>(q);
            const double inv_z = std::real(z);  // 1 / Z_{i,q}(1)
            if (q <= out.e0) {
                log_r += std::log(inv_z);
                continue;
            }
            const auto f = local(q);
            c_max = std::max(c_max, f.c[i].get_d());
            double d = std::pow(1.0 + f.c[i].get_d() / static_cast<double>(f.norm), f.primes_above);
            if (pinned_primes.count(q)) d = 1.0;  // pinned primes leave the free residues
            log_r += std::log(d * inv_z);
        }
        const double k = static_cast<double>(chars.size() + 1) + c_max;
        const double tail = k * k / static_cast<double>(opt.prime_bound - 1);
        out.residues[i] = std::exp(log_r);
        out.residue_errors[i] = out.residues[i] * (std::exp(rel + tail) - 1.0);
        log_error += rel + tail;
        value *= out.residues[i];
    }

    // D_q(1) / prod_i D_{q,i}(1) for E0 < q <= P
    double log_tail = 0;
    double c_total = 0;
    for (std::int64_t q : primes) {
        if (q <= out.e0 || pinned_primes.count(q)) continue;
        const auto f = local(q);
        double sum_c = 0;
        double denom = 1;
        for (std::size_t i = 0; i < m; ++i) {
            if (!keep[i]) continue;
            const double c = f.c[i].get_d();
            sum_c += c;
            denom *= 1.0 + c / static_cast<double>(f.norm);
        }
        c_total = std::max(c_total, sum_c);
        log_tail += f.primes_above * (std::log(1.0 + sum_c / static_cast<double>(f.norm)) - std::log(denom));
    }
    log_error += c_total * c_total / static_cast<double>(opt.prime_bound - 1);
    out.tail_product = std::exp(log_tail);
    value *= out.tail_product;

    out.value = value;
    out.error_bound = std::abs(value) * (std::exp(log_error) - 1.0);
    if (out.error_bound > opt.tolerance)
        throw ComputationError("prime bound or L-series length too small for tolerance: error bound " +
                               std::to_string(out.error_bound));
    return out;
}

}  // namespace ramify
