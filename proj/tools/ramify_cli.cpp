// ramify: command-line front end for the ramification-type library.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ramify/ramify.hpp"

using namespace ramify;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Output {
    Json json;
    Table table;
    std::string text_header;  // extra lines above the text table
};

struct Options {
    std::string group;
    std::string profile = "Q";
    std::string format = "json";
    std::string output;
    std::size_t order_bound = kDefaultOrderBound;

    // command specific
    std::int64_t prime = 0;
    bool brute_check = false;
    std::string prime_range;
    std::string X;
    std::vector<std::string> pins;
    bool exclude_wild = false;
    std::int64_t prime_bound = 100000;
    std::int64_t lseries_terms = 1000000;
    std::string wild_mode;
    double tolerance = 0;
    std::string delta;
    std::string weights;
    std::string bound;
    std::string series;
    std::string datum;
    int type_id = -1;
    std::string character = "orbits";
    std::string corpus = "default";
    std::uint64_t seed = 1;
    int random_data = 20;
};

std::vector<std::int64_t> parse_int_list(const std::string& s, const char* what) {
    std::vector<std::int64_t> out;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw UsageError(std::string("malformed ") + what + " '" + s + "'");
        }
    }
    if (out.empty()) throw UsageError(std::string("empty ") + what);
    return out;
}

std::map<int, std::int64_t> parse_pins(const std::vector<std::string>& pins) {
    std::map<int, std::int64_t> out;
    for (const auto& p : pins) {
        const auto eq = p.find('=');
        if (eq == std::string::npos) throw UsageError("pin must look like i=x, got '" + p + "'");
        try {
            out[std::stoi(p.substr(0, eq))] = std::stoll(p.substr(eq + 1));
        } catch (const std::exception&) {
            throw UsageError("malformed pin '" + p + "'");
        }
    }
    return out;
}

Rational parse_rational_arg(const std::string& s, const char* what) {
    try {
        return parse_rational(s);
    } catch (const ComputationError&) {
        throw UsageError(std::string("malformed ") + what + " '" + s + "'");
    }
}

CyclotomicProfile profile_for(const FiniteGroup& g, const Options& o) { return parse_profile(g.exponent(), o.profile); }

bool exact_series(const FiniteGroup& g, const Options& o) {
    if (o.series == "exact") {
        if (!g.is_abelian() || o.profile != "Q") throw ComputationError("exact series needs an abelian group and profile Q");
        return true;
    }
    if (o.series == "heuristic") return false;
    return g.is_abelian() && o.profile == "Q";
}

/// Local factors of the chosen series for primes <= limit and its prefactor.
std::pair<std::vector<LocalFactor>, Rational> series_factors(const FiniteGroup& g, const Options& o, std::int64_t limit) {
    const Rational pre = make_rational(1, static_cast<long>(g.order()));
    if (exact_series(g, o)) return {abelian_factors(g, limit, o.exclude_wild), pre};
    return {tame_factors(g, profile_for(g, o), 2, limit), pre};
}

std::string type_label(const RamificationType& t) { return "e" + std::to_string(t.e) + "#" + std::to_string(t.id); }

// ---------------------------------------------------------------------------

Output cmd_types(const Options& o) {
    const auto g = resolve_group(o.group, o.order_bound);
    const auto types = ramification_types(g, profile_for(g, o));
    Output out;
    out.json = {{"group", g.name()}, {"profile", o.profile}, {"types", to_json(types)}};
    out.table.header = {"id", "e", "representative", "class_orbit", "stabilizer_A", "index_U_A"};
    for (const auto& t : types)
        out.table.rows.push_back({std::to_string(t.id), std::to_string(t.e), std::to_string(t.representative),
                                  join_numbers(t.class_orbit), join_numbers(t.stabilizer_A),
                                  std::to_string(t.index_U_A)});
    return out;
}

Output cmd_chartable(const Options& o) {
    const auto g = resolve_group(o.group, o.order_bound);
    const auto table = character_table(g);
    Output out;
    out.json = to_json(table);
    out.table.header = {"row"};
    for (const auto& c : g.classes())
        out.table.header.push_back("C" + std::to_string(c.id) + "(o" + std::to_string(c.element_order) + ",s" +
                                   std::to_string(c.size()) + ")");
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        std::vector<std::string> row{"chi" + std::to_string(i)};
        for (const auto& v : table.rows[i].values) row.push_back(v.to_string());
        out.table.rows.push_back(std::move(row));
    }
    return out;
}

Output cmd_matrix(const Options& o) {
    const auto g = resolve_group(o.group, o.order_bound);
    const auto m = conductor_matrix(g, profile_for(g, o));
    Output out;
    out.json = to_json(m);
    out.table.header = {"type"};
    for (std::size_t j = 0; j < m.characters.size(); ++j) out.table.header.push_back("psi" + std::to_string(j));
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
        std::vector<std::string> row{type_label(m.types[i])};
        for (const auto& x : m.entries[i]) row.push_back(to_string(x));
        out.table.rows.push_back(std::move(row));
    }
    out.table.rows.push_back({"determinant", to_string(m.determinant)});
    return out;
}

Output cmd_conductor(const Options& o) {
    const auto g = resolve_group(o.group, o.order_bound);
    const auto profile = profile_for(g, o);
    const auto table = character_table(g);
    RamificationDatum datum = [&] {
        if (!o.datum.empty()) return load_datum(read_json_file(o.datum), g);
        const auto types = ramification_types(g, profile);
        if (o.type_id < 0 || static_cast<std::size_t>(o.type_id) >= types.size())
            throw UsageError("give --datum FILE or a valid --type id");
        return make_tame_datum(g, types[o.type_id]);
    }();
    std::vector<std::pair<std::string, Character>> chars;
    if (o.character == "orbits") {
        const auto orbit = galois_orbit_characters(table, profile);
        for (std::size_t j = 0; j < orbit.size(); ++j) chars.push_back({"psi" + std::to_string(j), orbit[j]});
    } else if (o.character == "rows") {
        for (std::size_t j = 0; j < table.rows.size(); ++j) chars.push_back({"chi" + std::to_string(j), table.rows[j]});
    } else {
        throw UsageError("--character must be 'orbits' or 'rows'");
    }
    Output out;
    Json list = Json::array();
    out.table.header = {"character", "fine", "artin", "wood_yasuda"};
    for (const auto& [name, psi] : chars) {
        const auto fine = fine_conductor(datum, psi);
        const auto artin = artin_conductor(datum, psi);
        Json item = {{"character", name}, {"fine", to_string(fine)}, {"artin", to_string(artin)}};
        std::string wy = "";
        if (datum.is_tame()) {
            wy = to_string(wy_weight(datum, psi));
            item["wood_yasuda"] = wy;
        }
        list.push_back(item);
        out.table.rows.push_back({name, to_string(fine), to_string(artin), wy});
    }
    out.json = {{"group", g.name()}, {"profile", o.profile}, {"e0", datum.e0}, {"tame", datum.is_tame()},
                {"conductors", list}};
    return out;
}

Output cmd_mass(const Options& o) {
    const auto g = resolve_group(o.group, o.order_bound);
    const auto profile = profile_for(g, o);
    const auto types = ramification_types(g, profile);
    std::optional<LocalMassTable> brute;
    if (o.brute_check) brute = local_mass_bruteforce(g, profile, o.prime);
    Output out;
    Json list = Json::array();
    out.table.header = {"type", "e", "mass"};
    if (brute) out.table.header.push_back("bruteforce");
    for (const auto& t : types) {
        const auto mass = local_mass(g, profile, t, o.prime);
        Json item = {{"type", t.id}, {"e", t.e}, {"mass", to_string(mass)}};
        std::vector<std::string> row{std::to_string(t.id), std::to_string(t.e), to_string(mass)};
        if (brute) {
            const auto& b = brute->per_type[t.id];
            item["bruteforce"] = to_string(b);
            row.push_back(to_string(b));
            if (b != mass)
                throw TheoremViolation("local mass equals pair count",
                                       "type " + std::to_string(t.id) + " q=" + std::to_string(o.prime) + ": " +
                                           to_string(mass) + " vs " + to_string(b));
        }
        list.push_back(item);
        out.table.rows.push_back(std::move(row));
    }
    out.json = {{"group", g.name()},
                {"profile", o.profile},
                {"prime", o.prime},
                {"norm", residue_norm(profile, o.prime)},
                {"masses", list}};
    return out;
}

Output cmd_factor(const Options& o) {
    const auto g = resolve_group(o.group, o.order_bound);
    const auto range = parse_int_list(o.prime_range, "prime range");
    if (range.size() != 2 || range[0] < 1 || range[1] < range[0]) throw UsageError("--prime-range expects lo,hi");
    const auto factors = tame_factors(g, profile_for(g, o), range[0], range[1]);
    Output out;
    Json list = Json::array();
    out.table.header = {"prime", "norm", "primes_above", "b"};
    const auto m = ramification_types(g, profile_for(g, o)).size();
    for (std::size_t i = 0; i < m; ++i) out.table.header.push_back("c" + std::to_string(i));
    for (const auto& f : factors) {
        list.push_back(to_json(f));
        std::vector<std::string> row{std::to_string(f.prime), std::to_string(f.norm), std::to_string(f.primes_above),
                                     to_string(f.b)};
        for (const auto& c : f.c) row.push_back(to_string(c));
        out.table.rows.push_back(std::move(row));
    }
    out.json = {{"group", g.name()}, {"profile", o.profile}, {"factors", list}};
    return out;
}

Output cmd_count(const Options& o) {
    const auto g = resolve_group(o.group, o.order_bound);
    const auto X = parse_int_list(o.X, "bounds");
    for (auto x : X)
        if (x < 1) throw UsageError("bounds must be positive");
    const auto pins = parse_pins(o.pins);
    BoxCountResult r;
    if (exact_series(g, o)) {
        r = abelian_count(g, X, o.exclude_wild, pins);
    } else {
        std::int64_t limit = 1;
        for (auto x : X) limit = std::max(limit, x);
        for (const auto& [i, x] : pins) limit = std::max(limit, x);
        const auto [factors, pre] = series_factors(g, o, limit);
        r = box_sum(factors, X, pins, pre);
    }
    double volume = 1;
    for (std::size_t i = 0; i < X.size(); ++i)
        if (!pins.count(static_cast<int>(i))) volume *= static_cast<double>(X[i]);
    Json pin_json = Json::object();
    for (const auto& [i, x] : pins) pin_json[std::to_string(i)] = x;
    Output out;
    out.json = {{"group", g.name()},    {"X", X},
                {"pins", pin_json},     {"exclude_wild", o.exclude_wild},
                {"series", exact_series(g, o) ? "exact" : "heuristic"},
                {"value", to_string(r.value)}, {"per_volume", r.value.get_d() / volume}};
    out.table.header = {"X", "pins", "value", "per_volume"};
    std::vector<std::string> pin_text;
    for (const auto& [i, x] : pins) pin_text.push_back(std::to_string(i) + "=" + std::to_string(x));
    std::ostringstream pv;
    pv << out.json["per_volume"].dump();
    out.table.rows.push_back({join_numbers(X), join(pin_text, " "), to_string(r.value), pv.str()});
    return out;
}

Output cmd_constant(const Options& o) {
    const auto g = resolve_group(o.group, o.order_bound);
    const auto profile = profile_for(g, o);
    ConstantOptions opt;
    opt.prime_bound = o.prime_bound;
    opt.lseries_terms = o.lseries_terms;
    opt.pins = parse_pins(o.pins);
    if (o.tolerance > 0) opt.tolerance = o.tolerance;
    std::string mode = o.wild_mode;
    if (mode.empty()) mode = g.is_abelian() && o.profile == "Q" ? "abelian-exact" : "skip";
    if (mode == "abelian-exact") opt.wild_mode = WildMode::abelian_exact;
    else if (mode == "skip") opt.wild_mode = WildMode::skip;
    else throw UsageError("--wild-mode must be 'skip' or 'abelian-exact'");
    const auto est = predicted_constant(g, profile, opt);
    Output out;
    out.json = to_json(est);
    out.json["group"] = g.name();
    out.json["profile"] = o.profile;
    out.json["wild_mode"] = mode;
    out.table.header = {"quantity", "value", "error_bound"};
    auto num = [](double x) { return Json(x).dump(); };
    out.table.rows.push_back({"C", num(est.value), num(est.error_bound)});
    for (std::size_t i = 0; i < est.residues.size(); ++i)
        out.table.rows.push_back({"r" + std::to_string(i), num(est.residues[i]), num(est.residue_errors[i])});
    out.table.rows.push_back({"finite_product", num(est.finite_product), ""});
    out.table.rows.push_back({"tail_product", num(est.tail_product), ""});
    out.table.rows.push_back({"wild_factor", num(est.wild_factor), ""});
    for (const auto& c : est.caveats) out.text_header += "caveat: " + c + "\n";
    return out;
}

Output cmd_shell(const Options& o) {
    const auto g = resolve_group(o.group, o.order_bound);
    const auto X = parse_int_list(o.X, "bounds");
    for (auto x : X)
        if (x < 1) throw UsageError("bounds must be positive");
    const auto delta = parse_rational_arg(o.delta, "delta");
    std::int64_t limit = 1;
    for (auto x : X) limit = std::max(limit, x);
    const auto [factors, pre] = series_factors(g, o, limit);
    if (!exact_series(g, o) && X.size() != ramification_types(g, profile_for(g, o)).size())
        throw UsageError("one bound per ramification type expected");
    const auto value = shell_sum(factors, X, delta, pre);
    Output out;
    out.json = {{"group", g.name()}, {"X", X}, {"delta", to_string(delta)}, {"value", to_string(value)},
                {"series", exact_series(g, o) ? "exact" : "heuristic"}};
    out.table.header = {"X", "delta", "value"};
    out.table.rows.push_back({join_numbers(X), to_string(delta), to_string(value)});
    return out;
}

Output cmd_region(const Options& o) {
    const auto g = resolve_group(o.group, o.order_bound);
    std::vector<Rational> h;
    {
        std::stringstream in(o.weights);
        std::string part;
        while (std::getline(in, part, ',')) h.push_back(parse_rational_arg(part, "weight"));
    }
    const auto bound = parse_rational_arg(o.bound, "bound");
    Rational min_h = *std::min_element(h.begin(), h.end());
    if (min_h <= 0) throw UsageError("weights must be positive");
    // x_i <= X^{1/h_i} <= X^{1/min h}
    const double limit_d = std::pow(bound.get_d(), 1.0 / min_h.get_d());
    const auto limit = static_cast<std::int64_t>(limit_d) + 1;
    const auto [factors, pre] = series_factors(g, o, limit);
    const auto value = region_sum_product(factors, h, bound, pre);
    const auto malle = malle_exponents(h);
    Json hj = Json::array();
    for (const auto& x : h) hj.push_back(to_string(x));
    Output out;
    out.json = {{"group", g.name()}, {"h", hj}, {"bound", to_string(bound)}, {"value", to_string(value)},
                {"malle_a", to_string(malle.a)}, {"malle_b", malle.b},
                {"series", exact_series(g, o) ? "exact" : "heuristic"}};
    out.table.header = {"h", "bound", "value", "malle_a", "malle_b"};
    std::vector<std::string> hs;
    for (const auto& x : h) hs.push_back(to_string(x));
    out.table.rows.push_back({join(hs, " "), to_string(bound), to_string(value), to_string(malle.a),
                              std::to_string(malle.b)});
    return out;
}

Output cmd_verify(const Options& o, int& status) {
    if (o.corpus != "default") throw UsageError("only the 'default' corpus is available");
    const auto reports = verify_corpus(default_corpus(), thread_count(), o.seed);
    Output out;
    Json list = Json::array();
    out.table.header = {"group", "profile", "checks", "violations", "first_violation"};
    std::size_t bad = 0;
    for (const auto& r : reports) {
        Json v = Json::array();
        for (const auto& x : r.violations) v.push_back({{"invariant", x.invariant}, {"witness", x.witness}});
        list.push_back({{"group", r.entry.group}, {"profile", r.entry.profile}, {"checks", r.checks}, {"violations", v}});
        std::string first = r.violations.empty() ? "" : r.violations[0].invariant + ": " + r.violations[0].witness;
        out.table.rows.push_back({r.entry.group, r.entry.profile, std::to_string(r.checks),
                                  std::to_string(r.violations.size()), first});
        bad += r.violations.size();
    }
    out.json = {{"corpus", o.corpus}, {"entries", list}, {"violations", bad}};
    if (bad > 0) {
        for (const auto& r : reports)
            for (const auto& x : r.violations)
                std::cerr << "violation: " << x.invariant << " [" << r.entry.group << "/" << r.entry.profile
                          << "] " << x.witness << "\n";
        status = 3;
    }
    return out;
}

void emit_error(const std::string& kind, const std::string& message, const std::string& invariant = {}) {
    Json e = {{"error", kind}, {"message", message}};
    if (!invariant.empty()) e["invariant"] = invariant;
    std::cerr << e.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ramification types, fine Artin conductors and counting heuristics"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub, bool needs_profile) {
        sub->add_option("--group", o.group, "preset name or group-spec JSON file")->required();
        if (needs_profile) sub->add_option("--profile", o.profile, "Q, cyclotomic, or generators like 3,5");
        sub->add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--output", o.output, "write to this file instead of stdout");
        sub->add_option("--order-bound", o.order_bound, "closure bound for permutation specs")
            ->check(CLI::PositiveNumber);
    };

    auto* types = app.add_subcommand("types", "list ramification types");
    add_common(types, true);
    auto* chartable = app.add_subcommand("chartable", "character table");
    add_common(chartable, false);
    auto* matrix = app.add_subcommand("matrix", "conductor matrix and determinant");
    add_common(matrix, true);
    auto* conductor = app.add_subcommand("conductor", "fine, Artin and Wood-Yasuda conductors of one datum");
    add_common(conductor, true);
    conductor->add_option("--datum", o.datum, "datum spec JSON file");
    conductor->add_option("--type", o.type_id, "use the tame datum of this type id");
    conductor->add_option("--character", o.character, "orbits (default) or rows");
    auto* mass = app.add_subcommand("mass", "local masses at a tame prime");
    add_common(mass, true);
    mass->add_option("--prime", o.prime, "rational prime coprime to the order")->required()->check(CLI::PositiveNumber);
    mass->add_flag("--brute-check", o.brute_check, "compare against the pair enumeration");
    auto* factor = app.add_subcommand("factor", "tame local factors over a prime range");
    add_common(factor, true);
    factor->add_option("--prime-range", o.prime_range, "lo,hi")->required();
    auto* count = app.add_subcommand("count", "exact box count");
    add_common(count, true);
    count->add_option("--X", o.X, "bounds a,b,c in type order")->required();
    count->add_option("--pin", o.pins, "fix coordinate i (0-based) to x: i=x");
    count->add_flag("--exclude-wild", o.exclude_wild, "drop wildly ramified local choices");
    count->add_option("--series", o.series, "exact or heuristic");
    auto* constant = app.add_subcommand("constant", "predicted leading constant");
    add_common(constant, true);
    constant->add_option("--prime-bound", o.prime_bound, "Euler products up to this prime")->check(CLI::PositiveNumber);
    constant->add_option("--lseries-terms", o.lseries_terms, "terms of each L(1,chi)")->check(CLI::PositiveNumber);
    constant->add_option("--wild-mode", o.wild_mode, "skip or abelian-exact");
    constant->add_option("--pin", o.pins, "boundary constant with coordinate i fixed to x: i=x");
    constant->add_option("--tolerance", o.tolerance, "fail if the error bound exceeds this")->check(CLI::PositiveNumber);
    auto* shell = app.add_subcommand("shell", "exact shell sum");
    add_common(shell, true);
    shell->add_option("--X", o.X, "bounds a,b,c")->required();
    shell->add_option("--delta", o.delta, "rational in (0,1)")->required();
    shell->add_flag("--exclude-wild", o.exclude_wild, "drop wildly ramified local choices");
    shell->add_option("--series", o.series, "exact or heuristic");
    auto* region = app.add_subcommand("region", "exact sum over prod x_i^h_i <= X");
    add_common(region, true);
    region->add_option("--weights", o.weights, "weights h_1,...,h_m")->required();
    region->add_option("--bound", o.bound, "X")->required();
    region->add_flag("--exclude-wild", o.exclude_wild, "drop wildly ramified local choices");
    region->add_option("--series", o.series, "exact or heuristic");
    auto* verify = app.add_subcommand("verify", "run the property corpus");
    verify->add_option("--corpus", o.corpus, "corpus name");
    verify->add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    verify->add_option("--output", o.output, "write to this file instead of stdout");
    verify->add_option("--seed", o.seed, "seed for random data");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("usage", e.what());
        return 2;
    }

    int status = 0;
    try {
        Output out;
        if (*types) out = cmd_types(o);
        else if (*chartable) out = cmd_chartable(o);
        else if (*matrix) out = cmd_matrix(o);
        else if (*conductor) out = cmd_conductor(o);
        else if (*mass) out = cmd_mass(o);
        else if (*factor) out = cmd_factor(o);
        else if (*count) out = cmd_count(o);
        else if (*constant) out = cmd_constant(o);
        else if (*shell) out = cmd_shell(o);
        else if (*region) out = cmd_region(o);
        else if (*verify) out = cmd_verify(o, status);

        std::string doc;
        if (o.format == "json") doc = out.json.dump(2) + "\n";
        else if (o.format == "csv") doc = out.table.csv();
        else doc = out.text_header + out.table.text();
        if (o.output.empty()) {
            std::cout << doc;
        } else {
            std::ofstream file(o.output);
            if (!file) throw ComputationError("cannot write " + o.output);
            file << doc;
        }
    } catch (const UsageError& e) {
        emit_error("usage", e.what());
        return 2;
    } catch (const TheoremViolation& e) {
        emit_error("theorem_violation", e.what(), e.invariant());
        return 3;
    } catch (const ComputationError& e) {
        emit_error("computation", e.what());
        return 1;
    } catch (const std::exception& e) {
        emit_error("computation", e.what());
        return 1;
    }
    return status;
}
