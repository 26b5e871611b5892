#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ramify/errors.hpp"
#include "ramify/rational.hpp"

namespace ramify {

/// Index of a group element; 0 is always the identity.
using Element = std::uint32_t;

/// Sorted list of element indices.
using ElementSet = std::vector<Element>;

inline constexpr std::size_t kDefaultOrderBound = 10000;

struct ConjugacyClass {
    int id = 0;
    ElementSet members;
    Element representative = 0;
    int element_order = 1;

    std::size_t size() const { return members.size(); }
};

/// A finite group given by its full multiplication table.
///
/// Cheap to copy: the table and all derived data (inverses, element
/// orders, conjugacy classes) live behind a shared immutable block.
class FiniteGroup {
public:
    using Table = std::vector<std::vector<Element>>;

    FiniteGroup() : FiniteGroup(Table{{0}}, "C1", false) {}

    /// Validates identity, Latin-square property and associativity.
    static FiniteGroup from_table(Table table, std::string name = {}) {
        return FiniteGroup(std::move(table), std::move(name), true);
    }

    /// For tables known to come from a group (presets, permutation closure).
    static FiniteGroup from_trusted_table(Table table, std::string name = {}) {
        return FiniteGroup(std::move(table), std::move(name), false);
    }

    std::size_t order() const { return d_->table.size(); }
    const std::string& name() const { return d_->name; }
    const Table& table() const { return d_->table; }

    Element mul(Element a, Element b) const { return d_->table[a][b]; }
    Element inverse(Element a) const { return d_->inverse[a]; }
    int element_order(Element a) const { return d_->orders[a]; }
    int exponent() const { return d_->exponent; }
    bool is_abelian() const { return d_->abelian; }

    Element power(Element a, std::int64_t k) const {
        const std::int64_t o = d_->orders[a];
        std::int64_t e = mod(k, o);
        Element result = 0, base = a;
        while (e > 0) {
            if (e & 1) result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }

    /// x g x^-1
    Element conjugate(Element g, Element x) const { return mul(mul(x, g), inverse(x)); }

    const std::vector<ConjugacyClass>& classes() const { return d_->classes; }
    int class_of(Element g) const { return d_->class_of[g]; }
    std::size_t class_count() const { return d_->classes.size(); }

    bool contains(Element g) const { return g < order(); }

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
        return a.d_ == b.d_ || a.d_->table == b.d_->table;
    }

private:
    struct Data {
        std::string name;
        Table table;
        std::vector<Element> inverse;
        std::vector<int> orders;
        int exponent = 1;
        bool abelian = true;
        std::vector<ConjugacyClass> classes;
        std::vector<int> class_of;
    };

    FiniteGroup(Table table, std::string name, bool validate) {
        auto data = std::make_shared<Data>();
        data->name = std::move(name);
        data->table = std::move(table);
        const std::size_t n = data->table.size();
        if (n == 0) throw ComputationError("group table is empty");
        for (const auto& row : data->table) {
            if (row.size() != n) throw ComputationError("group table is not square");
            for (Element x : row)
                if (x >= n) throw ComputationError("group table entry out of range");
        }
        if (validate) validate_table(data->table);
        derive(*data);
        d_ = std::move(data);
    }

    static void validate_table(const Table& t) {
        const std::size_t n = t.size();
        for (Element a = 0; a < n; ++a) {
            if (t[0][a] != a || t[a][0] != a)
                throw ComputationError("element 0 is not a two-sided identity");
        }
        // Latin square: every row and column a permutation, which gives inverses.
        for (std::size_t a = 0; a < n; ++a) {
            std::vector<bool> row_seen(n, false), col_seen(n, false);
            for (std::size_t b = 0; b < n; ++b) {
                if (row_seen[t[a][b]] || col_seen[t[b][a]])
                    throw ComputationError("group table has missing inverses (not a Latin square)");
                row_seen[t[a][b]] = col_seen[t[b][a]] = true;
            }
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (t[t[a][b]][c] != t[a][t[b][c]])
                        throw ComputationError("group table is not associative at (" + std::to_string(a) + "," +
                                               std::to_string(b) + "," + std::to_string(c) + ")");
    }

    static void derive(Data& d) {
        const std::size_t n = d.table.size();
        d.inverse.assign(n, 0);
        for (Element a = 0; a < n; ++a)
            for (Element b = 0; b < n; ++b)
                if (d.table[a][b] == 0) {
                    d.inverse[a] = b;
                    break;
                }
        // order of a: least k >= 1 with a^k = 1
        d.orders.assign(n, 1);
        std::int64_t exponent = 1;
        for (Element a = 1; a < n; ++a) {
            int k = 1;
            for (Element y = a; y != 0; y = d.table[y][a]) ++k;
            d.orders[a] = k;
            exponent = lcm64(exponent, k);
        }
        d.exponent = static_cast<int>(exponent);

        d.abelian = true;
        for (Element a = 0; a < n && d.abelian; ++a)
            for (Element b = a + 1; b < n; ++b)
                if (d.table[a][b] != d.table[b][a]) {
                    d.abelian = false;
                    break;
                }

        std::vector<int> owner(n, -1);
        std::vector<ConjugacyClass> classes;
        for (Element g = 0; g < n; ++g) {
            if (owner[g] >= 0) continue;
            ConjugacyClass c;
            for (Element x = 0; x < n; ++x) {
                Element h = d.table[d.table[x][g]][d.inverse[x]];
                if (owner[h] < 0) {
                    owner[h] = static_cast<int>(classes.size());
                    c.members.push_back(h);
                }
            }
            std::sort(c.members.begin(), c.members.end());
            c.representative = c.members.front();
            c.element_order = d.orders[g];
            classes.push_back(std::move(c));
        }
        std::sort(classes.begin(), classes.end(), [](const ConjugacyClass& a, const ConjugacyClass& b) {
            return std::pair(a.element_order, a.representative) < std::pair(b.element_order, b.representative);
        });
        d.class_of.assign(n, 0);
        for (std::size_t i = 0; i < classes.size(); ++i) {
            classes[i].id = static_cast<int>(i);
            for (Element g : classes[i].members) d.class_of[g] = static_cast<int>(i);
        }
        d.classes = std::move(classes);
    }

    std::shared_ptr<const Data> d_;
};

// ---------------------------------------------------------------------------
// Class-level operations

inline const std::vector<ConjugacyClass>& conjugacy_classes(const FiniteGroup& g) { return g.classes(); }

inline std::size_t centralizer_order(const FiniteGroup& g, Element x) {
    std::size_t count = 0;
    for (Element h = 0; h < g.order(); ++h)
        if (g.mul(h, x) == g.mul(x, h)) ++count;
    return count;
}

/// Permutation of class ids induced by C -> C^k; k must be a unit modulo exponent(G).
inline std::vector<int> power_class_map(const FiniteGroup& g, std::int64_t k) {
    if (std::gcd(mod(k, g.exponent()), static_cast<std::int64_t>(g.exponent())) != 1)
        throw ComputationError("power " + std::to_string(k) + " is not coprime to the exponent " +
                               std::to_string(g.exponent()));
    std::vector<int> map(g.class_count());
    for (const auto& c : g.classes()) map[c.id] = g.class_of(g.power(c.representative, k));
    return map;
}

// ---------------------------------------------------------------------------
// Subgroups

inline ElementSet normalize_set(ElementSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline bool set_contains(const ElementSet& s, Element x) { return std::binary_search(s.begin(), s.end(), x); }

inline bool is_subset(const ElementSet& small, const ElementSet& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

/// Closure of a generator list under multiplication.
inline ElementSet generated_subgroup(const FiniteGroup& g, std::span<const Element> gens) {
    std::vector<bool> in(g.order(), false);
    std::vector<Element> members{0};
    in[0] = true;
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (Element s : gens) {
            Element y = g.mul(members[i], s);
            if (!in[y]) {
                in[y] = true;
                members.push_back(y);
            }
        }
    }
    return normalize_set(std::move(members));
}

inline ElementSet cyclic_subgroup(const FiniteGroup& g, Element x) {
    Element gens[] = {x};
    return generated_subgroup(g, gens);
}

inline bool is_subgroup(const FiniteGroup& g, const ElementSet& s) {
    if (s.empty() || !set_contains(s, 0)) return false;
    for (Element x : s) {
        if (!g.contains(x)) return false;
        for (Element y : s)
            if (!set_contains(s, g.mul(x, y))) return false;
    }
    return true;
}

inline ElementSet conjugate_set(const FiniteGroup& g, const ElementSet& s, Element x) {
    ElementSet out;
    out.reserve(s.size());
    for (Element h : s) out.push_back(g.conjugate(h, x));
    return normalize_set(std::move(out));
}

/// `sub` normal in `ambient` (both subgroups of g).
inline bool is_normal_in(const FiniteGroup& g, const ElementSet& sub, const ElementSet& ambient) {
    for (Element x : ambient)
        for (Element h : sub)
            if (!set_contains(sub, g.conjugate(h, x))) return false;
    return true;
}

/// Every subgroup, sorted by (size, elements). Joins cyclic subgroups until
/// closure, so intended for small groups only.
inline std::vector<ElementSet> all_subgroups(const FiniteGroup& g) {
    std::set<ElementSet> found;
    std::vector<ElementSet> cyclics;
    for (Element x = 0; x < g.order(); ++x) {
        auto c = cyclic_subgroup(g, x);
        if (found.insert(c).second) cyclics.push_back(c);
    }
    std::deque<ElementSet> queue(found.begin(), found.end());
    while (!queue.empty()) {
        ElementSet h = std::move(queue.front());
        queue.pop_front();
        for (const auto& c : cyclics) {
            if (is_subset(c, h)) continue;
            ElementSet gens = h;
            gens.insert(gens.end(), c.begin(), c.end());
            auto joined = generated_subgroup(g, gens);
            if (found.insert(joined).second) queue.push_back(std::move(joined));
        }
    }
    std::vector<ElementSet> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(), [](const ElementSet& a, const ElementSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

struct CyclicSubgroupClass {
    Element generator = 0;
    int order = 1;
};

/// One representative per conjugacy class of cyclic subgroups, trivial
/// subgroup included, ordered by (order, smallest generator index).
inline std::vector<CyclicSubgroupClass> cyclic_subgroups_up_to_conjugacy(const FiniteGroup& g) {
    std::set<ElementSet> seen;
    std::vector<CyclicSubgroupClass> out;
    for (Element x = 0; x < g.order(); ++x) {
        auto c = cyclic_subgroup(g, x);
        if (seen.count(c)) continue;
        for (Element y = 0; y < g.order(); ++y) seen.insert(conjugate_set(g, c, y));
        out.push_back({x, g.element_order(x)});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::pair(a.order, a.generator) < std::pair(b.order, b.generator);
    });
    return out;
}

/// Small deterministic generating set: repeatedly adjoin the largest-order
/// element not yet generated (ties broken by index).
inline std::vector<Element> generating_set(const FiniteGroup& g) {
    std::vector<Element> gens;
    ElementSet current{0};
    while (current.size() < g.order()) {
        Element best = 0;
        int best_order = 0;
        for (Element x = 1; x < g.order(); ++x) {
            if (set_contains(current, x)) continue;
            // prefer elements that enlarge the subgroup the most
            std::vector<Element> trial = gens;
            trial.push_back(x);
            int size = static_cast<int>(generated_subgroup(g, trial).size());
            if (size > best_order) {
                best_order = size;
                best = x;
            }
        }
        gens.push_back(best);
        current = generated_subgroup(g, gens);
    }
    return gens;
}

// ---------------------------------------------------------------------------
// Homomorphisms

struct GroupHom {
    FiniteGroup source;
    FiniteGroup target;
    std::vector<Element> image_map;

    Element operator()(Element x) const { return image_map[x]; }

    ElementSet image_of(const ElementSet& s) const {
        ElementSet out;
        out.reserve(s.size());
        for (Element x : s) out.push_back(image_map[x]);
        return normalize_set(std::move(out));
    }

    bool is_homomorphism() const {
        if (image_map.size() != source.order() || image_map[0] != 0) return false;
        for (Element a = 0; a < source.order(); ++a)
            for (Element b = 0; b < source.order(); ++b)
                if (image_map[source.mul(a, b)] != target.mul(image_map[a], image_map[b])) return false;
        return true;
    }
};

/// Extends generator images to a homomorphism; throws when the assignment
/// is inconsistent or the generators do not generate the source.
inline GroupHom make_hom(const FiniteGroup& source, const FiniteGroup& target, std::span<const Element> gens,
                         std::span<const Element> images) {
    if (gens.size() != images.size()) throw ComputationError("generator and image lists differ in length");
    for (Element x : gens)
        if (!source.contains(x)) throw ComputationError("generator out of range");
    for (Element x : images)
        if (!target.contains(x)) throw ComputationError("image out of range");
    constexpr Element kUnset = ~Element{0};
    std::vector<Element> map(source.order(), kUnset);
    map[0] = 0;
    std::vector<Element> queue{0};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const Element x = queue[i];
        for (std::size_t k = 0; k < gens.size(); ++k) {
            const Element y = source.mul(x, gens[k]);
            const Element fy = target.mul(map[x], images[k]);
            if (map[y] == kUnset) {
                map[y] = fy;
                queue.push_back(y);
            } else if (map[y] != fy) {
                throw ComputationError("generator images are inconsistent with the relations of the source");
            }
        }
    }
    if (queue.size() != source.order()) throw ComputationError("images given on a non-generating set");
    GroupHom hom{source, target, std::move(map)};
    if (!hom.is_homomorphism())
        throw ComputationError("generator images are inconsistent with the relations of the source");
    return hom;
}

inline GroupHom identity_hom(const FiniteGroup& g) {
    std::vector<Element> map(g.order());
    std::iota(map.begin(), map.end(), Element{0});
    return {g, g, std::move(map)};
}

/// x -> c x c^-1
inline GroupHom inner_automorphism(const FiniteGroup& g, Element c) {
    std::vector<Element> map(g.order());
    for (Element x = 0; x < g.order(); ++x) map[x] = g.conjugate(x, c);
    return {g, g, std::move(map)};
}

/// All homomorphisms source -> target by brute force over images of a
/// generating set. Cost |target|^(#generators).
inline std::vector<GroupHom> all_homs(const FiniteGroup& source, const FiniteGroup& target) {
    const auto gens = generating_set(source);
    std::vector<GroupHom> out;
    std::vector<Element> images(gens.size(), 0);
    while (true) {
        try {
            out.push_back(make_hom(source, target, gens, images));
        } catch (const ComputationError&) {
        }
        std::size_t k = 0;
        while (k < images.size() && ++images[k] == target.order()) images[k++] = 0;
        if (k == images.size()) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Construction: permutations and presets

using Permutation = std::vector<std::uint32_t>;

/// Closure of permutation generators; elements sorted lexicographically by
/// image array, product (a*b)(x) = a(b(x)).
inline FiniteGroup group_from_permutations(std::size_t degree, const std::vector<Permutation>& generators,
                                           std::string name = {}, std::size_t order_bound = kDefaultOrderBound) {
    for (const auto& p : generators) {
        if (p.size() != degree) throw ComputationError("generator has wrong degree");
        std::vector<bool> seen(degree, false);
        for (auto x : p) {
            if (x >= degree || seen[x]) throw ComputationError("generator is not a permutation");
            seen[x] = true;
        }
    }
    Permutation id(degree);
    std::iota(id.begin(), id.end(), 0u);
    std::set<Permutation> elements{id};
    std::vector<Permutation> queue{id};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        for (const auto& s : generators) {
            Permutation y(degree);
            for (std::size_t x = 0; x < degree; ++x) y[x] = queue[i][s[x]];
            if (elements.insert(y).second) {
                if (elements.size() > order_bound)
                    throw ComputationError("generator closure exceeds order bound " + std::to_string(order_bound));
                queue.push_back(std::move(y));
            }
        }
    }
    std::vector<Permutation> sorted(elements.begin(), elements.end());
    std::map<Permutation, Element> index;
    for (std::size_t i = 0; i < sorted.size(); ++i) index.emplace(sorted[i], static_cast<Element>(i));
    FiniteGroup::Table table(sorted.size(), std::vector<Element>(sorted.size()));
    Permutation prod(degree);
    for (std::size_t a = 0; a < sorted.size(); ++a)
        for (std::size_t b = 0; b < sorted.size(); ++b) {
            for (std::size_t x = 0; x < degree; ++x) prod[x] = sorted[a][sorted[b][x]];
            table[a][b] = index.at(prod);
        }
    return FiniteGroup::from_trusted_table(std::move(table), std::move(name));
}

/// Permutations of the preset Sn/An in element order (for tests and output).
inline std::vector<Permutation> permutation_elements(std::size_t degree, bool alternating) {
    Permutation p(degree);
    std::iota(p.begin(), p.end(), 0u);
    std::vector<Permutation> out;
    do {
        if (!alternating) {
            out.push_back(p);
            continue;
        }
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < degree; ++i)
            for (std::size_t j = i + 1; j < degree; ++j)
                if (p[i] > p[j]) ++inversions;
        if (inversions % 2 == 0) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

namespace detail {

inline FiniteGroup cyclic_product(std::vector<int> factors, std::string name) {
    std::size_t n = 1;
    for (int f : factors) n *= static_cast<std::size_t>(f);
    // mixed-radix digits, first factor most significant
    auto digits = [&](std::size_t x) {
        std::vector<int> d(factors.size());
        for (std::size_t i = factors.size(); i-- > 0;) {
            d[i] = static_cast<int>(x % factors[i]);
            x /= factors[i];
        }
        return d;
    };
    FiniteGroup::Table table(n, std::vector<Element>(n));
    for (std::size_t a = 0; a < n; ++a) {
        auto da = digits(a);
        for (std::size_t b = 0; b < n; ++b) {
            auto db = digits(b);
            std::size_t c = 0;
            for (std::size_t i = 0; i < factors.size(); ++i) c = c * factors[i] + (da[i] + db[i]) % factors[i];
            table[a][b] = static_cast<Element>(c);
        }
    }
    return FiniteGroup::from_trusted_table(std::move(table), std::move(name));
}

/// r^k -> k, s r^k -> n + k.
inline FiniteGroup dihedral(int n) {
    const int size = 2 * n;
    FiniteGroup::Table table(size, std::vector<Element>(size));
    for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b) {
            const bool ra = a < n, rb = b < n;
            const int ka = a % n, kb = b % n;
            int c;
            if (ra && rb) c = (ka + kb) % n;
            else if (ra) c = n + static_cast<int>(mod(kb - ka, n));
            else if (rb) c = n + (ka + kb) % n;
            else c = static_cast<int>(mod(kb - ka, n));
            table[a][b] = static_cast<Element>(c);
        }
    return FiniteGroup::from_trusted_table(std::move(table), "D" + std::to_string(n));
}

/// Index 2u + s for sign (-1)^s times unit u in {1, i, j, k}.
inline FiniteGroup quaternion() {
    // unit products: sign and unit of u*v
    static constexpr int kUnit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static constexpr int kSign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    FiniteGroup::Table table(8, std::vector<Element>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            const int ua = a / 2, ub = b / 2;
            const int s = (a % 2 + b % 2 + kSign[ua][ub]) % 2;
            table[a][b] = static_cast<Element>(2 * kUnit[ua][ub] + s);
        }
    return FiniteGroup::from_trusted_table(std::move(table), "Q8");
}

inline std::optional<int> parse_small_int(const std::string& s) {
    if (s.empty() || s.size() > 4) return std::nullopt;
    int v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        v = v * 10 + (c - '0');
    }
    return v;
}

}  // namespace detail

/// Presets: Cn (n <= 30), products of cyclic groups "CaxCb[xCc]" (each
/// factor <= 30), Sn and An (n <= 5), Dn (order 2n, n <= 12), Q8.
///
/// Element orders: Cn index k = sigma^k; cyclic products use mixed radix
/// with the first factor most significant; Sn/An are permutations of
/// {0..n-1} sorted lexicographically; Dn has r^k at k and s r^k at n + k;
/// Q8 has (+-1, +-i, +-j, +-k) at indices 0..7 with the sign in the low bit.
inline FiniteGroup named_group(const std::string& raw) {
    std::string name;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        // accept the unicode multiplication sign as a separator
        if (i + 1 < raw.size() && static_cast<unsigned char>(raw[i]) == 0xC3 &&
            static_cast<unsigned char>(raw[i + 1]) == 0x97) {
            name += 'x';
            ++i;
        } else {
            name += raw[i];
        }
    }
    auto fail = [&]() -> FiniteGroup { throw ComputationError("unknown group preset '" + raw + "'"); };
    if (name == "Q8") return detail::quaternion();
    if (name.size() < 2) return fail();
    if (name.find('x') != std::string::npos) {
        std::vector<int> factors;
        std::size_t start = 0;
        while (start <= name.size()) {
            std::size_t end = name.find('x', start);
            std::string part = name.substr(start, end == std::string::npos ? std::string::npos : end - start);
            if (part.size() < 2 || part[0] != 'C') return fail();
            auto k = detail::parse_small_int(part.substr(1));
            if (!k || *k < 1 || *k > 30) return fail();
            factors.push_back(*k);
            if (end == std::string::npos) break;
            start = end + 1;
        }
        return detail::cyclic_product(factors, name);
    }
    auto k = detail::parse_small_int(name.substr(1));
    if (!k) return fail();
    const int n = *k;
    switch (name[0]) {
        case 'C':
            if (n < 1 || n > 30) return fail();
            return detail::cyclic_product({n}, name);
        case 'D':
            if (n < 1 || n > 12) return fail();
            return detail::dihedral(n);
        case 'S':
        case 'A': {
            if (n < 1 || n > 5) return fail();
            std::vector<Permutation> gens;
            const std::size_t deg = static_cast<std::size_t>(n);
            if (name[0] == 'S' && n >= 2) {
                Permutation t(deg), c(deg);
                std::iota(t.begin(), t.end(), 0u);
                std::swap(t[0], t[1]);
                for (std::size_t i = 0; i < deg; ++i) c[i] = static_cast<std::uint32_t>((i + 1) % deg);
                gens = {t, c};
            } else if (name[0] == 'A') {
                for (std::size_t k3 = 2; k3 < deg; ++k3) {
                    Permutation c(deg);
                    std::iota(c.begin(), c.end(), 0u);
                    c[0] = 1;
                    c[1] = static_cast<std::uint32_t>(k3);
                    c[k3] = 0;
                    gens.push_back(c);
                }
            }
            return group_from_permutations(deg, gens, name);
        }
        default:
            return fail();
    }
}

}  // namespace ramify
