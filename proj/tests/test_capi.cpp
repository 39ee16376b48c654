#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <dphist/dphist.h>

namespace {

const char* kSchemaJson = R"({"attributes":[
  {"name":"income","bins":[">20K","10K~20K","0~10K"]},
  {"name":"age","bins":["20~30","30~40","40~50"]}]})";

std::string example_csv() {
    // rebuild the worked example's 141 records
    const int counts[3][3] = {{10, 21, 37}, {20, 0, 0}, {53, 0, 0}};
    const char* income[] = {">20K", "10K~20K", "0~10K"};
    const char* age[] = {"20~30", "30~40", "40~50"};
    std::string csv = "income,age\n";
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < counts[i][j]; ++k)
                csv += std::string(income[i]) + "," + age[j] + "\n";
    return csv;
}

struct Fixture {
    dph_schema* schema = nullptr;
    dph_dataset* data = nullptr;
    Fixture() {
        REQUIRE(dph_schema_from_json(kSchemaJson, &schema) == DPH_OK);
        REQUIRE(dph_dataset_from_csv(schema, example_csv().c_str(), &data) == DPH_OK);
    }
    ~Fixture() {
        dph_dataset_free(data);
        dph_schema_free(schema);
    }
};

}  // namespace

TEST_CASE("version and error strings are always available") {
    CHECK(dph_version() != nullptr);
    CHECK(dph_last_error() != nullptr);
}

TEST_CASE("schema accessors") {
    Fixture f;
    size_t nd = 0, cells = 0, size = 0, idx = 0;
    CHECK(dph_schema_ndims(f.schema, &nd) == DPH_OK);
    CHECK(nd == 2);
    CHECK(dph_schema_cells(f.schema, &cells) == DPH_OK);
    CHECK(cells == 9);
    CHECK(dph_schema_dim_size(f.schema, 1, &size) == DPH_OK);
    CHECK(size == 3);
    char* name = nullptr;
    CHECK(dph_schema_dim_name(f.schema, 0, &name) == DPH_OK);
    CHECK(std::string(name) == "income");
    dph_string_free(name);
    CHECK(dph_schema_dim_index(f.schema, "age", &idx) == DPH_OK);
    CHECK(idx == 1);
    CHECK(dph_schema_dim_index(f.schema, "missing", &idx) == DPH_E_INVALID);
    char* json = nullptr;
    CHECK(dph_schema_to_json(f.schema, &json) == DPH_OK);
    dph_schema* back = nullptr;
    CHECK(dph_schema_from_json(json, &back) == DPH_OK);
    dph_string_free(json);
    dph_schema_free(back);
}

TEST_CASE("error paths set codes and messages") {
    dph_schema* s = nullptr;
    CHECK(dph_schema_from_json("{not json", &s) == DPH_E_PARSE);
    CHECK(std::strlen(dph_last_error()) > 0);
    CHECK(dph_schema_from_json(R"({"attributes":[]})", &s) == DPH_E_PARSE);
    CHECK(dph_schema_from_file("/nonexistent/x.json", &s) == DPH_E_IO);
    CHECK(dph_schema_from_json(nullptr, &s) == DPH_E_INVALID);
    CHECK(dph_schema_ndims(nullptr, nullptr) == DPH_E_INVALID);

    Fixture f;
    dph_dataset* d = nullptr;
    CHECK(dph_dataset_from_csv(f.schema, "income,age\nbogus,20~30\n", &d) == DPH_E_PARSE);
    dph_release* r = nullptr;
    CHECK(dph_release_cell(f.data, -1.0, 1, &r) == DPH_E_INVALID);
    CHECK(dph_release_dpcube(f.data, 0.2, 0.3, 0, 1, 0, 1, &r) == DPH_E_INVALID);  // a1 > a
    CHECK(dph_release_from_file("/nonexistent/release.json", &r) == DPH_E_IO);
    CHECK(dph_release_from_json("{\"strategy\":\"cell\"}", &r) == DPH_E_PARSE);
}

TEST_CASE("dataset accessors and true answers") {
    Fixture f;
    size_t rows = 0;
    CHECK(dph_dataset_rows(f.data, &rows) == DPH_OK);
    CHECK(rows == 141);
    double counts[9];
    CHECK(dph_dataset_counts(f.data, counts) == DPH_OK);
    CHECK(counts[0] == 10.0);
    CHECK(counts[2] == 37.0);
    CHECK(counts[6] == 53.0);
    size_t lo[2] = {0, 1}, hi[2] = {2, 1};
    double ans = 0;
    CHECK(dph_dataset_true_answer(f.data, lo, hi, &ans) == DPH_OK);
    CHECK(ans == 21.0);
}

TEST_CASE("release, estimate, and evaluate through the shared surface") {
    Fixture f;
    dph_release* rel = nullptr;
    REQUIRE(dph_release_dpcube(f.data, 0.2, 0.0, 0.0, 1, 0, 7, &rel) == DPH_OK);
    double a1 = 0, a2 = 0;
    CHECK(dph_release_alphas(rel, &a1, &a2) == DPH_OK);
    CHECK(a1 == 0.05);       // default alpha/4 (0.2/4 is exact)
    CHECK(a2 == 0.2 - 0.05);  // one ulp off the literal 0.15
    size_t nb = 0;
    CHECK(dph_release_box_count(rel, &nb) == DPH_OK);
    CHECK(nb >= 1);

    // round-trip via json keeps estimates identical
    char* json = nullptr;
    REQUIRE(dph_release_to_json(rel, &json) == DPH_OK);
    dph_release* rel2 = nullptr;
    REQUIRE(dph_release_from_json(json, &rel2) == DPH_OK);
    size_t lo[2] = {0, 0}, hi[2] = {0, 0};
    for (const char* method : {"uniform", "ls", "cell"}) {
        double e1 = 0, e2 = 0;
        CHECK(dph_estimate(rel, method, lo, hi, &e1) == DPH_OK);
        CHECK(dph_estimate(rel2, method, lo, hi, &e2) == DPH_OK);
        CHECK(e1 == e2);
    }
    double bogus = 0;
    CHECK(dph_estimate(rel, "bogus", lo, hi, &bogus) == DPH_E_INVALID);
    dph_string_free(json);

    char* ledger = nullptr;
    REQUIRE(dph_release_ledger_jsonl(rel, &ledger) == DPH_OK);
    CHECK(std::string(ledger).find("parallel") != std::string::npos);
    dph_string_free(ledger);

    dph_workload* w = nullptr;
    REQUIRE(dph_workload_generate(f.schema, 200, 5, 0, 0, &w) == DPH_OK);
    size_t wc = 0;
    CHECK(dph_workload_count(w, &wc) == DPH_OK);
    CHECK(wc == 200);
    size_t qlo[2], qhi[2], qcells = 0;
    CHECK(dph_workload_query(w, 0, qlo, qhi, &qcells) == DPH_OK);
    CHECK(qlo[0] <= qhi[0]);
    CHECK(qcells >= 1);
    CHECK(dph_workload_query(w, 200, qlo, qhi, nullptr) == DPH_E_INVALID);

    double err = 0, useful = 0, wv = 0;
    CHECK(dph_eval_avg_abs_error(f.data, rel, w, "ls", &err) == DPH_OK);
    CHECK(err >= 0);
    CHECK(dph_eval_usefulness(f.data, rel, w, "ls", 1e9, &useful) == DPH_OK);
    CHECK(useful == 1.0);
    CHECK(dph_weighted_variance(f.data, rel, &wv) == DPH_OK);
    CHECK(wv >= 0);

    dph_workload_free(w);
    dph_release_free(rel2);
    dph_release_free(rel);
}

TEST_CASE("unattainable workload bands fail cleanly") {
    Fixture f;
    dph_workload* w = nullptr;
    CHECK(dph_workload_generate(f.schema, 10, 1, 5, 5, &w) == DPH_E_INVALID);
    CHECK(w == nullptr);
}

TEST_CASE("analysis functions pass through") {
    double v = 0;
    CHECK(dph_uniform_error_bound(5.0, 5, 11, 0.15, &v) == DPH_OK);
    CHECK(v == doctest::Approx(25.0 + 5.0 / 1.65).epsilon(1e-12));
    CHECK(dph_laplace_sum_tail_bound(2, 1.0, 4.0, &v) == DPH_OK);
    CHECK(v == doctest::Approx(1 - 2 * std::exp(-2.0)).epsilon(1e-12));
    CHECK(dph_cell_usefulness_alpha(9, 0.05, 10.0, &v) == DPH_OK);
    CHECK(v == doctest::Approx(4.673).epsilon(1e-3));
    CHECK(dph_bilateral_gamma_pdf(1, 1.0, 0.0, &v) == DPH_OK);
    CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
    int ok = 0;
    CHECK(dph_uniform_usefulness_check(5.0, 5, 11, 0.15, 100.0, 0.05, &ok) == DPH_OK);
    CHECK(ok == 1);
    CHECK(dph_uniform_error_general(1, 0.2, 0.0, &v) == DPH_OK);
    CHECK(v == doctest::Approx(5.0).epsilon(1e-3));
    double mean = 0, se = 0;
    CHECK(dph_ls_error_expected(1, 1, 1.0, 1.0, 50000, 2, &mean, &se) == DPH_OK);
    CHECK(std::abs(mean - 0.75) < 5 * se);
    CHECK(dph_ls_error_expected(1, 1, 1.0, 1.0, 10, 2, &mean, &se) == DPH_E_INVALID);
    uint64_t h = 0;
    CHECK(dph_config_hash64("", &h) == DPH_OK);
    CHECK(h == 0xcbf29ce484222325ULL);
}

TEST_CASE("id3 and blocking through the shared surface") {
    // label leans 3:1 toward f0's value with a mild f1 effect, so the exact
    // tree uses both features on every path and no node is exactly pure;
    // wide margins keep every gain and majority comparison stable under
    // vanishing noise
    const char* sj = R"({"attributes":[
      {"name":"f0","bins":["a","b"]},
      {"name":"f1","bins":["x","y"]},
      {"name":"label","bins":["a","b"]}]})";
    dph_schema* s = nullptr;
    REQUIRE(dph_schema_from_json(sj, &s) == DPH_OK);
    std::string csv = "f0,f1,label\n";
    auto add = [&](const char* row, int n) {
        for (int i = 0; i < n; ++i) csv += row;
    };
    add("a,x,a\n", 30);
    add("a,x,b\n", 10);
    add("a,y,a\n", 28);
    add("a,y,b\n", 12);
    add("b,x,a\n", 9);
    add("b,x,b\n", 31);
    add("b,y,a\n", 11);
    add("b,y,b\n", 29);
    dph_dataset* d = nullptr;
    REQUIRE(dph_dataset_from_csv(s, csv.c_str(), &d) == DPH_OK);

    size_t features[2] = {0, 1};
    dph_tree* exact = nullptr;
    REQUIRE(dph_id3_train_exact(d, features, 2, 2, 0, &exact) == DPH_OK);
    double acc = 0;
    CHECK(dph_tree_accuracy(exact, d, &acc) == DPH_OK);
    CHECK(acc == 118.0 / 160.0);  // majority-leaf hits per cell group

    dph_release* rel = nullptr;
    REQUIRE(dph_release_dpcube(d, 1e9, 0.0, 0.0, 1, 0, 3, &rel) == DPH_OK);
    dph_tree* noisy = nullptr;
    REQUIRE(dph_id3_train_release(rel, "uniform", features, 2, 2, 0, &noisy) == DPH_OK);
    char *ja = nullptr, *jb = nullptr;
    CHECK(dph_tree_to_json(exact, &ja) == DPH_OK);
    CHECK(dph_tree_to_json(noisy, &jb) == DPH_OK);
    CHECK(std::string(ja) == std::string(jb));  // huge budget: identical tree
    dph_string_free(ja);
    dph_string_free(jb);

    size_t blocks = 0;
    double ratio = 0;
    CHECK(dph_blocking_ratio(rel, d, d, &blocks, &ratio) == DPH_OK);
    CHECK(blocks >= 1);
    CHECK(ratio >= 0);

    dph_tree_free(noisy);
    dph_tree_free(exact);
    dph_release_free(rel);
    dph_dataset_free(d);
    dph_schema_free(s);
}
