#include <doctest.h>

#include <vector>

#include "apps.hpp"
#include "example_data.hpp"

using namespace dphist;

namespace {

// class copies feature "f0"; feature "f1" is irrelevant
CubeSchema copy_schema() {
    CubeSchema s;
    s.dims.push_back(categorical_attribute("f0", {"a", "b"}));
    s.dims.push_back(categorical_attribute("f1", {"x", "y"}));
    s.dims.push_back(categorical_attribute("label", {"a", "b"}));
    return s;
}

// counts where label == f0 for every record
CellVector copy_counts(const CubeSchema& s, double per_cell = 10) {
    CellVector x(s.cell_count(), 0.0);
    for (std::size_t f0 = 0; f0 < 2; ++f0)
        for (std::size_t f1 = 0; f1 < 2; ++f1) x[s.index_of({f0, f1, f0})] = per_cell;
    return x;
}

}  // namespace

TEST_CASE("id3 learns a copied feature perfectly") {
    auto s = copy_schema();
    auto x = copy_counts(s);
    Id3Params p;
    p.features = {0, 1};
    p.class_dim = 2;
    auto tree = train_id3(s, x, p);
    REQUIRE(!tree.root->is_leaf);
    CHECK(tree.root->feature == 0);
    REQUIRE(tree.root->children.size() == 2);
    CHECK(tree.root->children[0]->is_leaf);
    CHECK(tree.root->children[0]->label == 0);
    CHECK(tree.root->children[1]->label == 1);

    CHECK(predict(tree, {0, 1, 0}) == 0);
    CHECK(predict(tree, {1, 0, 0}) == 1);
    CHECK(predict(tree, Record{"b", "x", "a"}) == 1);

    std::vector<Record> recs{{"a", "x", "a"}, {"b", "y", "b"}, {"a", "y", "b"}};
    CHECK(accuracy(tree, recs) == doctest::Approx(2.0 / 3));
}

TEST_CASE("gain ties resolve to the lowest feature index") {
    // f0 and f1 carry identical information about the class
    CubeSchema s;
    s.dims.push_back(categorical_attribute("f0", {"a", "b"}));
    s.dims.push_back(categorical_attribute("f1", {"x", "y"}));
    s.dims.push_back(categorical_attribute("label", {"p", "q"}));
    CellVector x(s.cell_count(), 0.0);
    x[s.index_of({0, 0, 0})] = 7;  // f0=a <=> f1=x <=> label=p
    x[s.index_of({1, 1, 1})] = 9;
    Id3Params p;
    p.features = {1, 0};  // declaration order must not matter
    p.class_dim = 2;
    auto tree = train_id3(s, x, p);
    REQUIRE(!tree.root->is_leaf);
    CHECK(tree.root->feature == 0);
}

TEST_CASE("negative counts are clamped before training") {
    auto s = copy_schema();
    auto x = copy_counts(s);
    // a large negative cell would flip the majority if it were not clamped
    x[s.index_of({0, 0, 1})] = -50;
    Id3Params p;
    p.features = {0, 1};
    p.class_dim = 2;
    auto tree = train_id3(s, x, p);
    CHECK(predict(tree, std::vector<std::size_t>{0, 0, 0}) == 0);
}

TEST_CASE("zero-mass branches inherit the parent majority") {
    CubeSchema s;
    s.dims.push_back(categorical_attribute("f0", {"a", "b", "c"}));
    s.dims.push_back(categorical_attribute("label", {"p", "q"}));
    CellVector x(s.cell_count(), 0.0);
    x[s.index_of({0, 0})] = 10;  // f0=a -> p
    x[s.index_of({1, 1})] = 4;   // f0=b -> q
    // f0=c never occurs; overall majority is p
    Id3Params p;
    p.features = {0};
    p.class_dim = 1;
    auto tree = train_id3(s, x, p);
    REQUIRE(!tree.root->is_leaf);
    CHECK(predict(tree, std::vector<std::size_t>{2, 0}) == 0);
}

TEST_CASE("depth cap stops recursion") {
    auto s = copy_schema();
    auto x = copy_counts(s);
    x[s.index_of({0, 0, 1})] = 3;  // make f1 matter a little below f0
    Id3Params p;
    p.features = {0, 1};
    p.class_dim = 2;
    p.max_depth = 1;
    auto tree = train_id3(s, x, p);
    REQUIRE(!tree.root->is_leaf);
    for (const auto& child : tree.root->children) CHECK(child->is_leaf);
}

TEST_CASE("id3 parameter validation") {
    auto s = copy_schema();
    auto x = copy_counts(s);
    Id3Params p;
    p.features = {0, 2};  // class among features
    p.class_dim = 2;
    CHECK_THROWS_AS(train_id3(s, x, p), std::invalid_argument);
    p.features = {0, 0};  // duplicate
    CHECK_THROWS_AS(train_id3(s, x, p), std::invalid_argument);
    p.features = {};  // no features
    CHECK_THROWS_AS(train_id3(s, x, p), std::invalid_argument);
    p.features = {0, 7};  // out of range
    CHECK_THROWS_AS(train_id3(s, x, p), std::invalid_argument);
}

TEST_CASE("training counts come from the chosen estimator") {
    auto h = testutil::example_release();
    auto cell = training_counts(h, EstimateMethod::cell_only);
    REQUIRE(cell.size() == 9);
    CHECK(cell[0] == doctest::Approx(10.0));
    auto ls = training_counts(h, EstimateMethod::least_squares);
    CHECK(ls[0] == doctest::Approx(10.0).epsilon(1e-9));  // consistent data: unchanged
    auto uni = training_counts(h, EstimateMethod::uniform);
    // box {income 0, age 0-1} holds 31 spread over two cells
    CHECK(uni[0] == doctest::Approx(15.5));
    CHECK(uni[1] == doctest::Approx(15.5));
    double total = 0;
    for (double v : uni) total += v;
    CHECK(total == doctest::Approx(141.0));
}

TEST_CASE("aligned equal blocks reduce pairs by exactly 1 - 1/k") {
    for (std::size_t k : {1, 2, 4, 10}) {
        std::vector<std::size_t> a(k, 100), b(k, 100);
        CHECK(reduction_ratio(a, b) == doctest::Approx(1.0 - 1.0 / double(k)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(reduction_ratio({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(reduction_ratio({1, 2}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(reduction_ratio({0, 0}, {0, 0}), std::invalid_argument);  // empty datasets
}

TEST_CASE("records are blocked by the release partition") {
    auto s = testutil::example_schema();
    auto boxes = testutil::example_boxes();
    std::vector<Record> recs{
        {">20K", "20~30"},    // box 0
        {">20K", "40~50"},    // box 1
        {"0~10K", "20~30"},   // box 2
        {"10K~20K", "30~40"}  // box 3
    };
    auto blocks = assign_blocks(s, recs, boxes);
    REQUIRE(blocks == std::vector<std::size_t>{0, 1, 2, 3});

    auto h = testutil::example_release();
    double r = blocking_reduction_ratio(h, recs, recs);
    // 4 blocks of 1 record each: 1 - 4/(4*4)
    CHECK(r == doctest::Approx(0.75));
}

TEST_CASE("blocking requires a subcube release") {
    ReleasedHistogram h;
    h.schema = testutil::example_schema();
    h.strategy = "cell";
    h.cell_hist = testutil::example_counts();
    std::vector<Record> recs{{">20K", "20~30"}};
    CHECK_THROWS_AS(blocking_reduction_ratio(h, recs, recs), std::invalid_argument);
}
