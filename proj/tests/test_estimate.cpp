#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "estimate.hpp"
#include "example_data.hpp"
#include "test_util.hpp"

using namespace dphist;

TEST_CASE("method names round-trip") {
    CHECK(method_from_string("uniform") == EstimateMethod::uniform);
    CHECK(method_from_string("ls") == EstimateMethod::least_squares);
    CHECK(method_from_string("cell") == EstimateMethod::cell_only);
    CHECK(method_name(EstimateMethod::least_squares) == "ls");
    CHECK_THROWS_AS(method_from_string("bogus"), std::invalid_argument);
}

TEST_CASE("two-cell block solve: y_p=9, cells (3,3)") {
    auto x = ls_solve_partition(9.0, {3.0, 3.0});
    REQUIRE(x.size() == 2);
    CHECK(x[0] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(4.0).epsilon(1e-12));
    // reconciled box total: (T + n_p*y_p)/(n_p+1) = (6+18)/3
    CHECK(x[0] + x[1] == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("block solve equals the dense normal-equations oracle") {
    std::mt19937_64 rng(31);
    for (std::size_t np : {1, 2, 3, 5, 11}) {
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<double> cells(np);
            for (auto& c : cells) c = double(int(rng() % 200) - 40) / 4.0;
            double yp = double(int(rng() % 400) - 80) / 4.0;
            auto got = ls_solve_partition(yp, cells);

            // stacked system: one row of ones, then the identity
            std::size_t rows = np + 1;
            std::vector<double> A(rows * np, 0.0), y(rows);
            for (std::size_t j = 0; j < np; ++j) A[j] = 1.0;
            y[0] = yp;
            for (std::size_t j = 0; j < np; ++j) {
                A[(j + 1) * np + j] = 1.0;
                y[j + 1] = cells[j];
            }
            auto want = testutil::dense_ls(A, rows, np, y);
            REQUIRE(got.size() == want.size());
            for (std::size_t j = 0; j < np; ++j)
                CHECK(got[j] == doctest::Approx(want[j]).epsilon(1e-9));

            // residual is orthogonal to the design columns
            std::vector<double> r(rows);
            for (std::size_t i = 0; i < rows; ++i) {
                double pred = 0;
                for (std::size_t j = 0; j < np; ++j) pred += A[i * np + j] * got[j];
                r[i] = y[i] - pred;
            }
            for (std::size_t j = 0; j < np; ++j) {
                double dot = 0;
                for (std::size_t i = 0; i < rows; ++i) dot += A[i * np + j] * r[i];
                CHECK(std::abs(dot) < 1e-9);
            }
        }
    }
}

TEST_CASE("pseudo-inverse entries follow the block pattern") {
    // column k of the solve's linear map = solve with a unit observation
    const std::size_t np = 3;
    std::vector<double> zero(np, 0.0);
    auto col0 = ls_solve_partition(1.0, zero);  // y_p = 1, cells 0
    for (std::size_t i = 0; i < np; ++i)
        CHECK(col0[i] == doctest::Approx(1.0 / (np + 1)).epsilon(1e-12));
    for (std::size_t k = 0; k < np; ++k) {
        auto unit = zero;
        unit[k] = 1.0;
        auto col = ls_solve_partition(0.0, unit);
        for (std::size_t i = 0; i < np; ++i) {
            double want = (i == k) ? double(np) / (np + 1) : -1.0 / (np + 1);
            CHECK(col[i] == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("per-box solves equal one global least squares") {
    // random noiseless-release shape with noisy observations
    std::mt19937_64 rng(47);
    auto h = testutil::example_release();
    for (auto& b : h.boxes) b.count += double(int(rng() % 9) - 4);
    for (auto& c : h.cell_hist) c += double(int(rng() % 9) - 4) / 2.0;

    auto got = ls_cell_estimates(h);

    auto M = query_matrix_of(h);
    std::vector<double> y;
    for (const auto& b : h.boxes) y.push_back(b.count);
    for (double c : h.cell_hist) y.push_back(c);
    auto want = testutil::dense_ls(M.a, M.rows, M.cols, y);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-9));
}

TEST_CASE("noise-free releases are answered exactly by ls and cell") {
    auto h = testutil::example_release();
    LinearQuery q2{{0, 1}, {2, 1}};
    CHECK(estimate(h, q2, EstimateMethod::cell_only) == doctest::Approx(21.0));
    CHECK(estimate(h, q2, EstimateMethod::least_squares) == doctest::Approx(21.0));
    CHECK(estimate_cell_only(h, LinearQuery{{0, 0}, {0, 0}}) == doctest::Approx(10.0));
}

TEST_CASE("uniform estimation spreads box counts by overlap fraction") {
    auto h = testutil::example_release();
    // age 30~40 overlaps half of box 0 (31) and half of box 3 (0)
    LinearQuery q2{{0, 1}, {2, 1}};
    CHECK(estimate_uniform(h, q2) == doctest::Approx(31.0 / 2 + 0.0 / 2));
    // whole cube = sum of all box counts
    LinearQuery all{{0, 0}, {2, 2}};
    CHECK(estimate_uniform(h, all) == doctest::Approx(141.0));
    // single cell inside box 1 gets the full count (box has one cell)
    CHECK(estimate_uniform(h, LinearQuery{{0, 2}, {0, 2}}) == doctest::Approx(37.0));
}

TEST_CASE("uniform and ls require a subcube partition") {
    ReleasedHistogram h;
    h.schema = testutil::example_schema();
    h.strategy = "cell";
    h.cell_hist = testutil::example_counts();
    LinearQuery q{{0, 0}, {0, 0}};
    CHECK(estimate(h, q, EstimateMethod::cell_only) == doctest::Approx(10.0));
    CHECK_THROWS_AS(estimate(h, q, EstimateMethod::uniform), std::invalid_argument);
    CHECK_THROWS_AS(estimate(h, q, EstimateMethod::least_squares), std::invalid_argument);
}
