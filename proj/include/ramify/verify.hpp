#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "ramify/character.hpp"
#include "ramify/conductor.hpp"
#include "ramify/counting.hpp"
#include "ramify/ramification.hpp"
#include "ramify/sampling.hpp"

namespace ramify {

struct CorpusEntry {
    std::string group;
    std::string profile;  // "Q", "cyclotomic" or a generator list such as "3"
};

/// Presets times {Q, cyclotomic}, plus an intermediate subgroup where
/// (Z/nZ)^x is not cyclic (exponent 8: <3>, exponent 12: <5>).
inline std::vector<CorpusEntry> default_corpus() {
    const std::vector<std::string> groups = {"C2",    "C3",    "C4",    "C5", "C6", "C7", "C8", "C2xC2", "C2xC4",
                                             "C3xC3", "S3",    "S4",    "A4", "D4", "D5", "D6", "Q8"};
    std::vector<CorpusEntry> out;
    for (const auto& name : groups) {
        out.push_back({name, "Q"});
        out.push_back({name, "cyclotomic"});
        const int n = named_group(name).exponent();
        if (n == 8) out.push_back({name, "3"});
        if (n == 12) out.push_back({name, "5"});
    }
    return out;
}

struct Violation {
    std::string invariant;
    std::string witness;
};

struct EntryReport {
    CorpusEntry entry;
    int checks = 0;
    std::vector<Violation> violations;
    double seconds = 0;
};

namespace detail {

inline std::string describe(const RamificationDatum& d) {
    std::string s = "I=" + std::to_string(d.inertia.size()) + " e0=" + std::to_string(d.e0) + " chain=";
    for (const auto& seg : d.segments) s += "(" + to_string(seg.start) + "," + std::to_string(seg.group.size()) + ")";
    return s;
}

inline std::string describe(const Character& c) {
    std::string s = "[";
    for (std::size_t i = 0; i < c.values.size(); ++i) s += (i ? "," : "") + c.values[i].to_string();
    return s + "]";
}

}  // namespace detail

/// Runs the property suite on one (group, profile) pair.
inline EntryReport verify_entry(const CorpusEntry& entry, std::uint64_t seed = 1, int random_data = 20) {
    const auto start = std::chrono::steady_clock::now();
    EntryReport rep{entry, 0, {}, 0};
    auto check = [&](bool ok, const std::string& invariant, const std::function<std::string()>& witness) {
        ++rep.checks;
        if (!ok) rep.violations.push_back({invariant, witness()});
        return ok;
    };
    try {
        const auto g = named_group(entry.group);
        const auto profile = parse_profile(g.exponent(), entry.profile);
        const std::string order = std::to_string(g.order());

        std::size_t total = 0;
        for (const auto& c : g.classes()) {
            total += c.size();
            const auto x = c.representative;
            check(centralizer_order(g, x) * c.size() == g.order(), "centralizer times class size equals order",
                  [&] { return "class " + std::to_string(c.id); });
        }
        check(total == g.order(), "classes partition the group", [&] { return order; });

        const auto table = character_table(g);
        const auto problem = check_character_table(table);
        check(problem.empty(), "character table orthogonality", [&] { return problem; });

        const auto types = ramification_types(g, profile);
        const auto orbit_chars = galois_orbit_characters(table, profile);
        check(types.size() == orbit_chars.size(), "type count equals orbit-character count", [&] {
            return std::to_string(types.size()) + " vs " + std::to_string(orbit_chars.size());
        });
        for (const auto& t : types) {
            const auto u = profile.projection(t.e);
            check(static_cast<std::size_t>(t.index_U_A) * t.stabilizer_A.size() == u.size(),
                  "index times stabilizer equals |U_e|", [&] { return "type " + std::to_string(t.id); });
        }

        try {
            const auto m = conductor_matrix(g, profile, &table);
            check(m.determinant != 0, "conductor matrix invertible", [] { return std::string("det 0"); });
        } catch (const TheoremViolation& e) {
            check(false, e.invariant(), [&] { return std::string(e.what()); });
        }

        // conductors on tame data of every type and on random wild data
        Sampler sampler(g, seed);
        std::vector<RamificationDatum> data;
        for (const auto& t : types) data.push_back(make_tame_datum(g, t));
        for (int k = 0; k < random_data; ++k) data.push_back(sampler.datum(k % 2 == 0));
        const auto rational = rational_basis(table);
        for (const auto& d : data) {
            for (const auto& psi : table.rows) {
                const auto fine = fine_conductor(d, psi);
                const auto artin = artin_conductor(d, psi);
                check(fine - artin == fine_minus_artin(d, psi), "fine minus artin identity",
                      [&] { return detail::describe(d) + " psi=" + detail::describe(psi); });
                if (d.is_tame())
                    check(is_integer(fine) && fine >= 0, "tame fine conductor is a nonnegative integer",
                          [&] { return detail::describe(d) + " psi=" + detail::describe(psi); });
            }
            for (const auto& psi : rational)
                check(fine_conductor(d, psi) == artin_conductor(d, psi), "fine equals artin on rational characters",
                      [&] { return detail::describe(d) + " psi=" + detail::describe(psi); });
        }

        // local masses against the pair enumeration
        for (std::int64_t q : primes_up_to(50)) {
            if (static_cast<std::int64_t>(g.order()) % q == 0) continue;
            const auto brute = local_mass_bruteforce(g, profile, q);
            Rational sum = 1;
            for (const auto& t : types) {
                const auto mass = local_mass(g, profile, t, q);
                sum += mass;
                check(mass == brute.per_type[t.id], "local mass equals pair count",
                      [&] { return "q=" + std::to_string(q) + " type " + std::to_string(t.id); });
            }
            Rational brute_sum = brute.unramified;
            for (const auto& x : brute.per_type) brute_sum += x;
            check(sum == brute_sum, "total tame mass", [&] { return "q=" + std::to_string(q); });
        }

        // non-field detector on every proper subgroup
        if (entry.profile == "Q" && g.order() <= 24) {
            for (const auto& h : sampler.subgroups()) {
                if (h.size() == g.order()) continue;
                try {
                    const auto t = non_field_detector(g, h);
                    const auto& cls = g.classes()[g.class_of(t.representative)];
                    bool avoids = true;
                    for (Element x : cls.members) avoids = avoids && !set_contains(h, x);
                    check(avoids, "non-field detector avoids conjugates of H",
                          [&] { return "|H|=" + std::to_string(h.size()); });
                } catch (const TheoremViolation& e) {
                    check(false, "non-field detector", [&] { return "|H|=" + std::to_string(h.size()); });
                }
            }
        }
    } catch (const std::exception& e) {
        rep.violations.push_back({"computation", e.what()});
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

/// Runs every entry; parallel over entries, report order fixed by the corpus.
inline std::vector<EntryReport> verify_corpus(const std::vector<CorpusEntry>& corpus, int threads = 1,
                                              std::uint64_t seed = 1) {
    std::vector<EntryReport> out(corpus.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < corpus.size(); ++i) out[i] = verify_entry(corpus[i], seed);
        return out;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < corpus.size(); i += threads) out[i] = verify_entry(corpus[i], seed);
        });
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace ramify
