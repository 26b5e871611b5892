#include <gtest/gtest.h>

#include <set>

#include "ramify/character.hpp"

using namespace ramify;

namespace {

const std::vector<std::string> kGroups = {"C1", "C2", "C4", "C6", "C8", "C2xC2", "C2xC4", "C3xC3", "S3",
                                          "S4", "A4", "D4", "D5", "D6", "Q8", "A5"};

Cyclotomic cx(long v) { return Cyclotomic::from_rational(v); }

/// Class values keyed by (element order, class size); unique for the
/// groups where this is used.
std::map<std::pair<int, std::size_t>, int> class_key(const FiniteGroup& g) {
    std::map<std::pair<int, std::size_t>, int> out;
    for (const auto& c : g.classes()) out[{c.element_order, c.size()}] = c.id;
    return out;
}

}  // namespace

TEST(Character, TablesPassStructuralChecks) {
    for (const auto& name : kGroups) {
        const auto t = character_table(named_group(name));
        EXPECT_EQ(check_character_table(t), "") << name;
        for (const auto& v : t.rows[0].values) EXPECT_EQ(v, cx(1)) << name;
    }
}

TEST(Character, IrreducibleFunctionalEquation) {
    // chi(x) chi(y) = chi(1)/|G| sum_z chi(x z y z^-1) characterizes the
    // irreducible characters among normalized class functions
    for (const auto& name : {"S3", "Q8", "A4", "D5", "S4"}) {
        const auto g = named_group(name);
        const auto t = character_table(g);
        for (const auto& chi : t.rows)
            for (Element x = 0; x < g.order(); ++x)
                for (Element y = 0; y < g.order(); y += 3) {
                    Cyclotomic s;
                    for (Element z = 0; z < g.order(); ++z) s += chi(g.mul(x, g.conjugate(y, z)));
                    s *= chi.degree() * Rational(1, static_cast<unsigned long>(g.order()));
                    EXPECT_EQ(chi(x) * chi(y), s) << name;
                }
    }
}

TEST(Character, AbelianTablesAreProductsOfRootsOfUnity) {
    // C_{n1} x ... with mixed radix digits, first factor most significant
    const std::map<std::string, std::vector<int>> shapes = {
        {"C5", {5}}, {"C8", {8}}, {"C2xC4", {2, 4}}, {"C3xC3", {3, 3}}, {"C2xC2", {2, 2}}};
    for (const auto& [name, dims] : shapes) {
        const auto g = named_group(name);
        auto digits = [&](std::size_t x) {
            std::vector<int> d(dims.size());
            for (std::size_t i = dims.size(); i-- > 0;) {
                d[i] = static_cast<int>(x % dims[i]);
                x /= dims[i];
            }
            return d;
        };
        std::set<std::vector<std::string>> expected, got;
        for (std::size_t a = 0; a < g.order(); ++a) {
            const auto da = digits(a);
            std::vector<std::string> row;
            for (std::size_t x = 0; x < g.order(); ++x) {
                const auto dx = digits(x);
                Cyclotomic v = cx(1);
                for (std::size_t i = 0; i < dims.size(); ++i) v *= Cyclotomic::root_of_unity(dims[i], da[i] * dx[i]);
                row.push_back(v.at_level(g.exponent()).to_string());
            }
            expected.insert(row);
        }
        for (const auto& chi : character_table(g).rows) {
            std::vector<std::string> row;
            for (std::size_t x = 0; x < g.order(); ++x)
                row.push_back(chi(static_cast<Element>(x)).at_level(g.exponent()).to_string());
            got.insert(row);
        }
        EXPECT_EQ(got, expected) << name;
    }
}

TEST(Character, S4Table) {
    const auto g = named_group("S4");
    const auto key = class_key(g);
    // columns: identity, transposition, double transposition, 3-cycle, 4-cycle
    const std::vector<int> cols = {key.at({1, 1}), key.at({2, 6}), key.at({2, 3}), key.at({3, 8}), key.at({4, 6})};
    const std::set<std::vector<long>> expected = {
        {1, 1, 1, 1, 1}, {1, -1, 1, 1, -1}, {2, 0, 2, -1, 0}, {3, 1, -1, 0, -1}, {3, -1, -1, 0, 1}};
    std::set<std::vector<long>> got;
    for (const auto& chi : character_table(g).rows) {
        std::vector<long> row;
        for (int c : cols) row.push_back(chi.values[c].rational_value().get_num().get_si());
        got.insert(row);
    }
    EXPECT_EQ(got, expected);
}

TEST(Character, Q8AndD4ShareTheirTable) {
    for (const auto& name : {"Q8", "D4"}) {
        const auto t = character_table(named_group(name));
        std::multiset<long> degrees;
        for (const auto& chi : t.rows) degrees.insert(chi.degree().rational_value().get_num().get_si());
        EXPECT_EQ(degrees, (std::multiset<long>{1, 1, 1, 1, 2})) << name;
        for (const auto& chi : t.rows)
            for (const auto& v : chi.values) EXPECT_TRUE(v.is_rational()) << name;
    }
}

TEST(Character, S3RowOrder) {
    const auto t = character_table(named_group("S3"));
    ASSERT_EQ(t.rows.size(), 3u);
    EXPECT_EQ(t.rows[0].degree(), cx(1));
    EXPECT_EQ(t.rows[1].degree(), cx(1));
    EXPECT_EQ(t.rows[2].degree(), cx(2));
}

TEST(Character, PermutationCharacterByFixedCosets) {
    for (const auto& name : {"S3", "S4", "A4", "D6", "Q8"}) {
        const auto g = named_group(name);
        const auto table = character_table(g);
        for (const auto& h : all_subgroups(g)) {
            SubgroupCharacter one{h, std::vector<Cyclotomic>(h.size(), cx(1))};
            const auto induced = induce(one, g);
            // fixed points of x on G/H: cosets yH with y^-1 x y in H
            for (const auto& c : g.classes()) {
                long fixed = 0;
                for (Element y = 0; y < g.order(); ++y)
                    if (set_contains(h, g.conjugate(c.representative, g.inverse(y)))) ++fixed;
                EXPECT_EQ(induced.values[c.id], cx(fixed / static_cast<long>(h.size()))) << name;
            }
            const auto mult = decompose(table, induced);
            EXPECT_EQ(mult[0], 1);
            for (const auto& m : mult) EXPECT_GE(m, 0);
        }
    }
}

TEST(Character, FrobeniusReciprocity) {
    for (const auto& name : {"S3", "S4", "D5", "Q8", "C2xC4"}) {
        const auto g = named_group(name);
        const auto table = character_table(g);
        for (const auto& h : all_subgroups(g)) {
            // class functions on H: restrictions of rows times a twist by a root of unity on a coset
            for (const auto& a : table.rows) {
                const auto omega = restrict(a, h);
                const auto ind = induce(omega, g);
                for (const auto& chi : table.rows) {
                    const auto lhs = inner_product(ind, chi);
                    const auto rhs = inner_product(a, chi, h);
                    EXPECT_EQ(lhs, rhs) << name;
                }
            }
        }
    }
}

TEST(Character, DecomposeRejectsNonCharacters) {
    const auto g = named_group("S3");
    const auto t = character_table(g);
    const Character half = t.rows[1] * Rational(1, 2);
    EXPECT_THROW(decompose(t, half), ComputationError);
    const auto mult = decompose(t, t.rows[2] * Rational(3) - t.rows[1]);
    EXPECT_EQ(mult, (std::vector<Integer>{0, -1, 3}));
}

TEST(Character, GaloisOrbitsUnderProfiles) {
    const auto c5 = named_group("C5");
    const auto t = character_table(c5);
    EXPECT_EQ(galois_orbit_characters(t, make_profile(5, "Q")).size(), 1u);
    EXPECT_EQ(galois_orbit_characters(t, make_profile(5, "cyclotomic")).size(), 4u);
    EXPECT_EQ(galois_orbit_characters(t, make_profile(5, std::vector<std::int64_t>{4})).size(), 2u);
    const auto c8 = named_group("C8");
    const auto t8 = character_table(c8);
    // orbits of (Z/8)^x and of <3> on nontrivial characters of C8
    EXPECT_EQ(galois_orbit_characters(t8, make_profile(8, "Q")).size(), 3u);
    EXPECT_EQ(galois_orbit_characters(t8, make_profile(8, std::vector<std::int64_t>{3})).size(), 4u);
    for (const auto& chi : rational_basis(t8))
        for (const auto& v : chi.values) EXPECT_TRUE(v.is_rational());
}

TEST(Character, DixonPrime) {
    for (const auto& name : kGroups) {
        const auto g = named_group(name);
        const auto t = character_table(g);
        EXPECT_TRUE(is_prime(t.prime));
        EXPECT_EQ(t.prime % g.exponent(), 1 % g.exponent());
        EXPECT_GT(t.prime * t.prime, 4 * static_cast<std::int64_t>(g.order()));
    }
}
