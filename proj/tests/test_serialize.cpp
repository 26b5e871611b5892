#include <gtest/gtest.h>

#include "ramify/ramify.hpp"

using namespace ramify;

#ifndef RAMIFY_SAMPLES_DIR
#define RAMIFY_SAMPLES_DIR "samples"
#endif

namespace {

std::string sample(const std::string& name) { return std::string(RAMIFY_SAMPLES_DIR) + "/" + name; }

}  // namespace

TEST(Serialize, Rationals) {
    EXPECT_EQ(to_json(Rational(3, 4)), Json("3/4"));
    EXPECT_EQ(to_json(Rational(-2)), Json("-2/1"));
    EXPECT_EQ(rational_from_json(Json("5/10")), Rational(1, 2));
    EXPECT_EQ(rational_from_json(Json(7)), Rational(7));
    EXPECT_THROW(rational_from_json(Json(0.5)), ComputationError);
    EXPECT_THROW(parse_rational("1/0"), ComputationError);
    EXPECT_THROW(parse_rational("abc"), ComputationError);
}

TEST(Serialize, GroupSpecs) {
    const auto v = load_group(read_json_file(sample("klein_table.json")));
    EXPECT_EQ(v.order(), 4u);
    EXPECT_TRUE(v.is_abelian());
    EXPECT_EQ(v.exponent(), 2);
    const auto s4 = resolve_group(sample("s4_perm.json"));
    EXPECT_EQ(s4.order(), 24u);
    EXPECT_EQ(s4.class_count(), 5u);
    EXPECT_EQ(resolve_group(sample("d5_named.json")).order(), 10u);
    EXPECT_EQ(resolve_group("Q8").order(), 8u);
    EXPECT_THROW(resolve_group(sample("missing.json")), ComputationError);
    EXPECT_THROW(load_group(Json::parse(R"({"kind":"blob"})")), ComputationError);
    EXPECT_THROW(load_group(Json::parse(R"({"kind":"table","order":3,"table":[[0,1],[1,0]]})")), ComputationError);
    EXPECT_THROW(load_group(read_json_file(sample("s4_perm.json")), 10), ComputationError);
}

TEST(Serialize, Datums) {
    const auto c2 = named_group("C2");
    const auto d = load_datum(read_json_file(sample("c2_wild_datum.json")), c2);
    EXPECT_EQ(d.e0, 1);
    EXPECT_EQ(d.segments.size(), 2u);
    const auto c4 = named_group("C4");
    const auto w = load_datum(read_json_file(sample("c4_wild_datum.json")), c4);
    EXPECT_EQ(w.e0, 2);
    EXPECT_EQ(w.segments[1].start, Rational(5, 2));
    const auto s3 = named_group("S3");
    const auto t = load_datum(read_json_file(sample("s3_tame_datum.json")), s3);
    EXPECT_TRUE(t.is_tame());
    EXPECT_EQ(t.e0, 3);
}

TEST(Serialize, TypesAndMatrices) {
    const auto g = named_group("S3");
    const auto profile = make_profile(6, "Q");
    const auto j = to_json(ramification_types(g, profile));
    ASSERT_TRUE(j.is_array());
    EXPECT_EQ(j.size(), 2u);
    EXPECT_EQ(j[0]["e"], 2);
    EXPECT_EQ(j[1]["index_U_A"], 1);
    const auto m = to_json(conductor_matrix(g, profile));
    EXPECT_EQ(m["determinant"], "2/1");
    EXPECT_EQ(m["entries"][1][1], "2/1");
}

TEST(Serialize, KeysAreSorted) {
    const auto text = to_json(ramification_types(named_group("C3"), make_profile(3, "Q"))).dump();
    EXPECT_LT(text.find("class_orbit"), text.find("e\""));
    EXPECT_LT(text.find("\"id\""), text.find("index_U_A"));
    EXPECT_LT(text.find("representative"), text.find("stabilizer_A"));
}

TEST(Serialize, CharacterTableJson) {
    const auto t = character_table(named_group("C3"));
    const auto j = to_json(t);
    EXPECT_EQ(j["rows"].size(), 3u);
}

TEST(Serialize, CsvEscaping) {
    EXPECT_EQ(csv_escape("plain"), "plain");
    EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
    Table t{{"x", "y"}, {{"1", "2/3"}, {"a,b", "c"}}};
    EXPECT_EQ(t.csv(), "x,y\n1,2/3\n\"a,b\",c\n");
    EXPECT_EQ(t.text(), "x    y\n1    2/3\na,b  c\n");
}
