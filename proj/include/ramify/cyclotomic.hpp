#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ramify/errors.hpp"
#include "ramify/rational.hpp"

namespace ramify {

namespace detail {

/// Per-level reduction data for Q(zeta_N): the cyclotomic polynomial and
/// the reduced power-basis form of every monomial x^k, 0 <= k < N.
struct CyclotomicLevel {
    int level = 1;
    int degree = 1;                                    // phi(N)
    std::vector<std::int64_t> phi_poly;                // low to high, monic, size degree+1
    std::vector<std::vector<std::int64_t>> monomial;   // monomial[k] has size degree
    std::vector<int> units;                            // (Z/NZ)^x ascending
};

using IntPoly = std::vector<std::int64_t>;

/// Exact quotient a / b for monic b.
inline IntPoly poly_divide_exact(IntPoly a, const IntPoly& b) {
    const std::size_t db = b.size() - 1;
    if (a.size() < b.size()) throw ComputationError("cyclotomic polynomial division underflow");
    IntPoly q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        const std::int64_t coef = a[i];
        q[i - db] = coef;
        if (coef == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= coef * b[j];
    }
    for (std::size_t i = 0; i < db; ++i)
        if (a[i] != 0) throw ComputationError("cyclotomic polynomial division not exact");
    return q;
}

inline const CyclotomicLevel& cyclotomic_level(int n);

/// Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.
inline IntPoly cyclotomic_polynomial(int n) {
    IntPoly num(static_cast<std::size_t>(n) + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (std::int64_t d : divisors(n)) {
        if (d == n) continue;
        num = poly_divide_exact(std::move(num), cyclotomic_level(static_cast<int>(d)).phi_poly);
    }
    return num;
}

inline std::shared_ptr<const CyclotomicLevel> build_level(int n) {
    auto lv = std::make_shared<CyclotomicLevel>();
    lv->level = n;
    lv->phi_poly = cyclotomic_polynomial(n);
    lv->degree = static_cast<int>(lv->phi_poly.size()) - 1;
    const int deg = lv->degree;
    lv->monomial.assign(n, std::vector<std::int64_t>(deg, 0));
    std::vector<std::int64_t> cur(deg, 0);
    cur[0] = 1;  // x^0
    for (int k = 0; k < n; ++k) {
        lv->monomial[k] = cur;
        // cur <- x * cur mod Phi_n
        const std::int64_t top = cur[deg - 1];
        std::vector<std::int64_t> next(deg, 0);
        for (int i = deg - 1; i >= 1; --i) next[i] = cur[i - 1];
        next[0] = 0;
        if (deg == 1) next[0] = 0;
        for (int i = 0; i < deg; ++i) next[i] -= top * lv->phi_poly[i];
        cur = std::move(next);
    }
    for (int k = 0; k < n; ++k)
        if (std::gcd(k, n) == 1) lv->units.push_back(k);
    if (n == 1) lv->units = {0};
    return lv;
}

inline const CyclotomicLevel& cyclotomic_level(int n) {
    if (n < 1) throw ComputationError("cyclotomic level must be positive");
    static std::recursive_mutex mutex;
    static std::map<int, std::shared_ptr<const CyclotomicLevel>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
    auto lv = build_level(n);
    return *cache.emplace(n, std::move(lv)).first->second;
}

}  // namespace detail

/// Exact element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^(phi(N)-1)
/// reduced modulo the N-th cyclotomic polynomial, where zeta = exp(2 pi i/N).
///
/// Binary operations on different levels lift both operands to the lcm.
class Cyclotomic {
public:
    Cyclotomic() : level_(1), c_(1) {}

    Cyclotomic(long value) : level_(1), c_{Rational(value)} {}  // NOLINT: implicit from integers
    Cyclotomic(const Rational& value) : level_(1), c_{value} {}  // NOLINT

    static Cyclotomic from_rational(const Rational& q, int level = 1) {
        Cyclotomic x;
        x.level_ = level;
        x.c_.assign(detail::cyclotomic_level(level).degree, Rational(0));
        x.c_[0] = q;
        return x;
    }

    /// zeta_N^j
    static Cyclotomic root_of_unity(int n, std::int64_t j) {
        const auto& lv = detail::cyclotomic_level(n);
        Cyclotomic x;
        x.level_ = n;
        const auto& m = lv.monomial[mod(j, n)];
        x.c_.assign(m.begin(), m.end());
        return x;
    }

    /// Coefficients (length phi(level)) must already be reduced.
    static Cyclotomic from_coefficients(int level, std::vector<Rational> coeffs) {
        if (static_cast<int>(coeffs.size()) != detail::cyclotomic_level(level).degree)
            throw ComputationError("coefficient vector length must equal phi(level)");
        Cyclotomic x;
        x.level_ = level;
        x.c_ = std::move(coeffs);
        return x;
    }

    int level() const { return level_; }
    const std::vector<Rational>& coefficients() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
    }

    bool is_rational() const {
        return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& q) { return q == 0; });
    }

    Rational rational_value() const {
        if (!is_rational()) throw ComputationError("cyclotomic number is not rational");
        return c_[0];
    }

    /// Integral power-basis coefficients, i.e. an element of Z[zeta_N].
    bool is_algebraic_integer() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q.get_den() == 1; });
    }

    /// Same number written at level m, a multiple of level().
    Cyclotomic at_level(int m) const {
        if (m % level_ != 0) throw ComputationError("target level must be a multiple of the current level");
        if (m == level_) return *this;
        const auto& lv = detail::cyclotomic_level(m);
        const int step = m / level_;
        Cyclotomic x;
        x.level_ = m;
        x.c_.assign(lv.degree, Rational(0));
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            const auto& mono = lv.monomial[(j * step) % m];
            for (int i = 0; i < lv.degree; ++i)
                if (mono[i] != 0) x.c_[i] += c_[j] * mono[i];
        }
        return x;
    }

    /// zeta -> zeta^k, k coprime to the level.
    Cyclotomic galois(std::int64_t k) const {
        if (std::gcd(mod(k, level_), static_cast<std::int64_t>(level_)) != 1 && level_ != 1)
            throw ComputationError("Galois exponent " + std::to_string(k) + " not coprime to level " +
                                   std::to_string(level_));
        const auto& lv = detail::cyclotomic_level(level_);
        Cyclotomic x;
        x.level_ = level_;
        x.c_.assign(lv.degree, Rational(0));
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            const auto& mono = lv.monomial[mod(static_cast<std::int64_t>(j) * k, level_)];
            for (int i = 0; i < lv.degree; ++i)
                if (mono[i] != 0) x.c_[i] += c_[j] * mono[i];
        }
        return x;
    }

    /// Complex conjugation, the Galois map k = -1.
    Cyclotomic conj() const { return galois(-1); }

    Cyclotomic operator-() const {
        Cyclotomic x = *this;
        for (auto& q : x.c_) q = -q;
        return x;
    }

    Cyclotomic& operator+=(const Cyclotomic& o) {
        align(o, [&](const Cyclotomic& b) {
            for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
        });
        return *this;
    }

    Cyclotomic& operator-=(const Cyclotomic& o) {
        align(o, [&](const Cyclotomic& b) {
            for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= b.c_[i];
        });
        return *this;
    }

    Cyclotomic& operator*=(const Cyclotomic& o) {
        align(o, [&](const Cyclotomic& b) { *this = multiply_same_level(*this, b); });
        return *this;
    }

    Cyclotomic& operator*=(const Rational& q) {
        for (auto& c : c_) c *= q;
        return *this;
    }

    Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

    Cyclotomic inverse() const {
        if (is_zero()) throw ComputationError("division by zero in Q(zeta)");
        if (is_rational()) return from_rational(1 / c_[0], level_);
        // product of the other Galois conjugates; a * rest is the norm
        const auto& lv = detail::cyclotomic_level(level_);
        Cyclotomic rest = from_rational(1, level_);
        for (int k : lv.units)
            if (k != 1) rest *= galois(k);
        Cyclotomic norm = multiply_same_level(*this, rest);
        if (!norm.is_rational()) throw ComputationError("internal: norm is not rational");
        rest *= Rational(1 / norm.c_[0]);
        return rest;
    }

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Rational& q) { return a *= q; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.level_ == b.level_) return a.c_ == b.c_;
        const int m = static_cast<int>(lcm64(a.level_, b.level_));
        return a.at_level(m).c_ == b.at_level(m).c_;
    }

    /// Total order: lexicographic on coefficients at the common level.
    friend int compare(const Cyclotomic& a, const Cyclotomic& b) {
        const int m = static_cast<int>(lcm64(a.level_, b.level_));
        const auto ca = a.at_level(m), cb = b.at_level(m);
        for (std::size_t i = 0; i < ca.c_.size(); ++i) {
            if (ca.c_[i] < cb.c_[i]) return -1;
            if (ca.c_[i] > cb.c_[i]) return 1;
        }
        return 0;
    }

    std::complex<double> to_complex() const {
        std::complex<double> z = 0;
        for (std::size_t j = 0; j < c_.size(); ++j)
            z += c_[j].get_d() * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / level_);
        return z;
    }

    /// GAP-style text: "2 - E(3)^2".
    std::string to_string() const {
        std::ostringstream out;
        bool first = true;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            Rational q = c_[j];
            if (q == 0) continue;
            const bool neg = q < 0;
            if (neg) q = -q;
            if (first) out << (neg ? "-" : "");
            else out << (neg ? " - " : " + ");
            first = false;
            std::string coef = q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
            if (j == 0) {
                out << coef;
                continue;
            }
            if (q != 1) out << coef << "*";
            out << "E(" << level_ << ")";
            if (j > 1) out << "^" << j;
        }
        if (first) out << "0";
        return out.str();
    }

private:
    template <class F>
    void align(const Cyclotomic& o, F&& f) {
        if (o.level_ == level_) {
            f(o);
            return;
        }
        const int m = static_cast<int>(lcm64(level_, o.level_));
        if (m != level_) *this = at_level(m);
        if (o.level_ == m) f(o);
        else f(o.at_level(m));
    }

    static Cyclotomic multiply_same_level(const Cyclotomic& a, const Cyclotomic& b) {
        const int n = a.level_;
        const auto& lv = detail::cyclotomic_level(n);
        std::vector<Rational> acc(n, Rational(0));
        std::vector<bool> touched(n, false);
        for (std::size_t j = 0; j < a.c_.size(); ++j) {
            if (a.c_[j] == 0) continue;
            for (std::size_t l = 0; l < b.c_.size(); ++l) {
                if (b.c_[l] == 0) continue;
                const std::size_t k = (j + l) % n;
                acc[k] += a.c_[j] * b.c_[l];
                touched[k] = true;
            }
        }
        Cyclotomic x;
        x.level_ = n;
        x.c_.assign(lv.degree, Rational(0));
        for (int k = 0; k < n; ++k) {
            if (!touched[k] || acc[k] == 0) continue;
            const auto& mono = lv.monomial[k];
            for (int i = 0; i < lv.degree; ++i)
                if (mono[i] != 0) x.c_[i] += acc[k] * mono[i];
        }
        return x;
    }

    int level_;
    std::vector<Rational> c_;
};

inline Cyclotomic root_of_unity(int n, std::int64_t j) { return Cyclotomic::root_of_unity(n, j); }

inline Cyclotomic galois_apply(const Cyclotomic& x, std::int64_t k) { return x.galois(k); }

}  // namespace ramify
