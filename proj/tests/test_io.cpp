#include <doctest.h>

#include <charconv>
#include <sstream>

#include "apps.hpp"
#include "example_data.hpp"
#include "io.hpp"

using namespace dphist;

TEST_CASE("number formatting round-trips and is shortest-form") {
    for (double v : {0.1, 1.0 / 3, 1e-17, 12345.0, -0.0, 2.5e300}) {
        auto s = fmt_double(v);
        double back = 0;
        auto r = std::from_chars(s.data(), s.data() + s.size(), back);
        REQUIRE(r.ec == std::errc{});
        CHECK(back == v);
    }
    CHECK(fmt_double(0.1) == "0.1");
    CHECK(fmt_double(141.0) == "141");
}

TEST_CASE("config hash matches FNV-1a reference values") {
    CHECK(config_hash64("") == 0xcbf29ce484222325ULL);
    CHECK(config_hash64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(hash_hex(0xcbf29ce484222325ULL) == "cbf29ce484222325");
}

TEST_CASE("schema json round-trips byte for byte") {
    auto s = testutil::example_schema();
    s.dims.push_back(numeric_attribute("score", {0, 5, 10}));
    auto j = schema_to_json(s);
    auto s2 = schema_from_json(j);
    CHECK(schema_to_json(s2).dump() == j.dump());
    REQUIRE(s2.ndims() == 3);
    CHECK(s2.dims[2].numeric());
    CHECK(s2.dims[2].bins.size() == 2);
    CHECK(s2.dims[0].bins == s.dims[0].bins);
}

TEST_CASE("schema json rejects malformed input") {
    CHECK_THROWS(schema_from_json(nlohmann::json::parse("{}")));
    CHECK_THROWS(schema_from_json(nlohmann::json::parse(R"({"attributes":[]})")));
    CHECK_THROWS(
        schema_from_json(nlohmann::json::parse(R"({"attributes":[{"name":"x"}]})")));
    CHECK_THROWS(schema_from_json(
        nlohmann::json::parse(R"({"attributes":[{"name":"x","edges":[1]}]})")));
}

TEST_CASE("record csv accepts any column order and flags bad rows") {
    auto s = testutil::example_schema();
    {
        std::istringstream in("age,income\n20~30,>20K\n40~50,0~10K\n");
        auto recs = records_from_csv(in, s);
        REQUIRE(recs.size() == 2);
        CHECK(recs[0][0] == ">20K");  // reordered into schema order
        CHECK(recs[0][1] == "20~30");
        CHECK(recs[1][0] == "0~10K");
    }
    {
        std::istringstream in("income\n>20K\n");  // missing a column
        CHECK_THROWS_AS(records_from_csv(in, s), std::invalid_argument);
    }
    {
        std::istringstream in("income,age,income\n>20K,20~30,>20K\n");  // duplicate
        CHECK_THROWS_AS(records_from_csv(in, s), std::invalid_argument);
    }
    {
        std::istringstream in("income,age\n>20K\n");  // short row: line number in message
        try {
            records_from_csv(in, s);
            FAIL("expected a throw");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("2") != std::string::npos);
        }
    }
    {
        // quoted fields may contain commas
        CubeSchema q;
        q.dims.push_back(categorical_attribute("place", {"a,b", "c"}));
        std::istringstream in("place\n\"a,b\"\nc\n");
        auto recs = records_from_csv(in, q);
        REQUIRE(recs.size() == 2);
        CHECK(recs[0][0] == "a,b");
    }
}

TEST_CASE("release json round-trips byte for byte") {
    auto h = testutil::example_release();
    auto j = release_to_json(h);
    auto h2 = release_from_json(j);
    CHECK(release_to_json(h2).dump() == j.dump());
    CHECK(h2.strategy == h.strategy);
    CHECK(h2.alpha1 == h.alpha1);
    CHECK(h2.alpha2 == h.alpha2);
    CHECK(h2.seed == h.seed);
    REQUIRE(h2.cell_hist.size() == 9);
    REQUIRE(h2.boxes.size() == 4);
    CHECK(h2.boxes[2].count == 73.0);
    CHECK(h2.boxes[2].box.lo == h.boxes[2].box.lo);
}

TEST_CASE("release json validates its contents") {
    auto good = release_to_json(testutil::example_release());
    auto bad = good;
    bad["strategy"] = "mystery";
    CHECK_THROWS(release_from_json(bad));
    bad = good;
    bad["cells"].erase(0);  // wrong length
    CHECK_THROWS(release_from_json(bad));
    bad = good;
    bad["boxes"].erase(0);  // no longer a partition
    CHECK_THROWS(release_from_json(bad));
    bad = good;
    bad.erase("schema");
    CHECK_THROWS(release_from_json(bad));
}

TEST_CASE("ledger serializes one charge per line") {
    std::vector<ChargeEntry> log{{"phase1", 0.05, ChargeKind::parallel},
                                 {"phase2", 0.15, ChargeKind::parallel}};
    auto text = ledger_to_jsonl(log);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
    auto first = nlohmann::json::parse(text.substr(0, text.find('\n')));
    CHECK(first["label"] == "phase1");
    CHECK(first["alpha"] == 0.05);
    CHECK(first["kind"] == "parallel");
}

TEST_CASE("query csv round-trips") {
    auto s = testutil::example_schema();
    std::vector<LinearQuery> qs{{{0, 0}, {0, 0}}, {{0, 1}, {2, 1}}, {{1, 0}, {2, 2}}};
    auto text = queries_to_csv(s, qs);
    CHECK(text.rfind("lo_income,hi_income,lo_age,hi_age\n", 0) == 0);
    std::istringstream in(text);
    auto back = queries_from_csv(in, s);
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back[i].lo == qs[i].lo);
        CHECK(back[i].hi == qs[i].hi);
    }
    // header mismatch is an error
    std::istringstream wrong("lo_age,hi_age,lo_income,hi_income\n0,0,0,0\n");
    CHECK_THROWS_AS(queries_from_csv(wrong, s), std::invalid_argument);
    // out-of-range indices are an error
    std::istringstream oob("lo_income,hi_income,lo_age,hi_age\n0,0,0,5\n");
    CHECK_THROWS(queries_from_csv(oob, s));
}

TEST_CASE("decision tree json carries the split structure") {
    CubeSchema s;
    s.dims.push_back(categorical_attribute("f0", {"a", "b"}));
    s.dims.push_back(categorical_attribute("label", {"p", "q"}));
    CellVector x(s.cell_count(), 0.0);
    x[s.index_of({0, 0})] = 5;
    x[s.index_of({1, 1})] = 5;
    Id3Params p;
    p.features = {0};
    p.class_dim = 1;
    auto tree = train_id3(s, x, p);
    auto j = tree_to_json(tree);
    CHECK(j["class"] == "label");
    CHECK(j["root"]["type"] == "split");
    CHECK(j["root"]["feature"] == "f0");
    CHECK(j["root"]["children"]["a"]["type"] == "leaf");
    CHECK(j["root"]["children"]["a"]["label"] == "p");
    CHECK(j["root"]["children"]["b"]["label"] == "q");
}

TEST_CASE("schema file loader reports missing files") {
    CHECK_THROWS(schema_from_file("/nonexistent/schema.json"));
}
