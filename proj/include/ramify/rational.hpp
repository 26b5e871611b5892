#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "ramify/errors.hpp"

namespace ramify {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// "num/den" with den > 0; integers keep the "/1".
inline std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Accepts "n", "-n", "n/d" (any sign placement gmp understands).
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw ComputationError("empty rational literal");
    Rational q;
    if (q.set_str(s, 10) != 0) throw ComputationError("malformed rational '" + s + "'");
    if (q.get_den() == 0) throw ComputationError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline double to_double(const Rational& q) { return q.get_d(); }

// Small-integer helpers used throughout.

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / std::gcd(a, b) * b;
}

/// Nonnegative residue of a mod m.
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::int64_t euler_phi(std::int64_t n) {
    std::int64_t result = n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> small, large;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t m) {
    std::int64_t result = 1 % m;
    base = mod(base, m);
    while (exp > 0) {
        if (exp & 1) result = static_cast<std::int64_t>(static_cast<__int128>(result) * base % m);
        base = static_cast<std::int64_t>(static_cast<__int128>(base) * base % m);
        exp >>= 1;
    }
    return result;
}

/// Inverse of a modulo m; a must be a unit.
inline std::int64_t invmod(std::int64_t a, std::int64_t m) {
    std::int64_t t = 0, new_t = 1, r = m, new_r = mod(a, m);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw ComputationError("not invertible modulo " + std::to_string(m));
    return mod(t, m);
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Distinct prime factors, ascending.
inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// Primes <= limit by a plain Eratosthenes sieve.
inline std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
    std::vector<std::int64_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (std::int64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::int64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

}  // namespace ramify
