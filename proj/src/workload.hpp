#pragma once
// Random query workloads and evaluation metrics over a release.

#include <cstdint>
#include <vector>

#include "cube.hpp"
#include "estimate.hpp"
#include "partition.hpp"

namespace dphist {

struct WorkloadParams {
    std::size_t count = 0;
    std::uint64_t seed = 0;
    // optional size band (cells); 0/0 = unfiltered
    std::size_t min_size = 0;
    std::size_t max_size = 0;
};

// Random range queries: per dimension, an (lo, hi) pair drawn uniformly over
// the n(n+1)/2 valid inclusive ranges. With a size band set, queries are
// rejection-sampled into [min_size, max_size]; an unattainable band is an
// error (checked exactly against the attainable products of range widths).
std::vector<LinearQuery> generate_workload(const CubeSchema& schema, const WorkloadParams& p);

double avg_abs_error(const CubeSchema& schema, const CellVector& x, const ReleasedHistogram& h,
                     const std::vector<LinearQuery>& queries, EstimateMethod m);

// Fraction of queries whose absolute error is <= eps.
double empirical_usefulness(const CubeSchema& schema, const CellVector& x,
                            const ReleasedHistogram& h, const std::vector<LinearQuery>& queries,
                            EstimateMethod m, double eps);

// Sum over boxes of (true data count in the box) * (population variance of
// the true cell counts in the box). 0 for a per-cell partition.
double weighted_variance(const CubeSchema& schema, const CellVector& x,
                         const std::vector<PartitionBox>& boxes);

}  // namespace dphist
