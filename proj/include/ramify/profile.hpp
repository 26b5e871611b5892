#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "ramify/errors.hpp"
#include "ramify/rational.hpp"

namespace ramify {

/// The image of Gal(K(mu_n)|K) in (Z/nZ)^x, which is all the counting and
/// conductor machinery needs to know about the base field K.
struct CyclotomicProfile {
    int modulus = 1;
    std::vector<int> subgroup{0};  // sorted residues; {0} stands for the unit group of Z/1Z
    std::string label;

    bool contains(std::int64_t k) const {
        return std::binary_search(subgroup.begin(), subgroup.end(), static_cast<int>(mod(k, modulus)));
    }

    std::size_t size() const { return subgroup.size(); }

    /// U_e: image of the subgroup in (Z/eZ)^x for e | modulus, sorted.
    std::vector<int> projection(int e) const {
        if (modulus % e != 0) throw ComputationError("projection level must divide the profile modulus");
        std::vector<int> out;
        for (int k : subgroup) out.push_back(static_cast<int>(mod(k, e)));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    friend bool operator==(const CyclotomicProfile& a, const CyclotomicProfile& b) {
        return a.modulus == b.modulus && a.subgroup == b.subgroup;
    }
};

/// Full unit group of Z/nZ, sorted ({0} for n = 1).
inline std::vector<int> unit_group(int n) {
    if (n == 1) return {0};
    std::vector<int> out;
    for (int k = 1; k < n; ++k)
        if (std::gcd(k, n) == 1) out.push_back(k);
    return out;
}

/// Subgroup of (Z/nZ)^x generated by the given residues.
inline std::vector<int> generated_units(int n, const std::vector<std::int64_t>& generators) {
    const int one = static_cast<int>(mod(1, n));
    std::vector<int> members{one};
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::int64_t g : generators) {
            const int r = static_cast<int>(mod(members[i] * mod(g, n), n));
            if (std::find(members.begin(), members.end(), r) == members.end()) members.push_back(r);
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

/// "Q" is the full unit group (base field Q), "cyclotomic" the trivial
/// subgroup (K contains mu_n).
inline CyclotomicProfile make_profile(int n, const std::string& preset) {
    if (n < 1) throw ComputationError("profile modulus must be positive");
    CyclotomicProfile p;
    p.modulus = n;
    p.label = preset;
    if (preset == "Q") p.subgroup = unit_group(n);
    else if (preset == "cyclotomic") p.subgroup = {static_cast<int>(mod(1, n))};
    else throw ComputationError("unknown profile preset '" + preset + "'");
    return p;
}

inline CyclotomicProfile make_profile(int n, const std::vector<std::int64_t>& generators) {
    if (n < 1) throw ComputationError("profile modulus must be positive");
    for (std::int64_t g : generators)
        if (std::gcd(mod(g, n), static_cast<std::int64_t>(n)) != 1 && n != 1)
            throw ComputationError("profile generator " + std::to_string(g) + " is not coprime to " +
                                   std::to_string(n));
    CyclotomicProfile p;
    p.modulus = n;
    p.subgroup = generated_units(n, generators);
    std::string label = "<";
    for (std::size_t i = 0; i < generators.size(); ++i) label += (i ? "," : "") + std::to_string(generators[i]);
    p.label = label + ">";
    return p;
}

/// Parses "Q", "cyclotomic", or a comma-separated generator list "3,5".
inline CyclotomicProfile parse_profile(int n, const std::string& text) {
    if (text == "Q" || text == "cyclotomic") return make_profile(n, text);
    std::vector<std::int64_t> gens;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find(',', start);
        std::string part = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
        try {
            std::size_t used = 0;
            gens.push_back(std::stoll(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw ComputationError("malformed profile '" + text + "'");
        }
        if (end == std::string::npos) break;
        start = end + 1;
    }
    if (gens.empty()) throw ComputationError("empty profile");
    return make_profile(n, gens);
}

}  // namespace ramify
