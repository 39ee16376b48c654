#pragma once
// Histogram release strategies and the kd-tree v-optimal partitioner.
//
// "cell": one noisy count per cell (a single parallel charge).
// "dpcube": phase I spends alpha1 on a noisy cell histogram, the kd tree
// partitions that noisy histogram (no extra budget), and phase II spends
// alpha2 on noisy counts of the resulting boxes over the original data.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cube.hpp"
#include "noise.hpp"

namespace dphist {

struct KdParams {
    double xi0 = 0;             // split a box only while its cell variance exceeds xi0
    std::size_t min_cells = 1;  // never split a box with <= this many cells
    std::size_t max_depth = 0;  // 0 = ceil(log2 m) + 2
};

struct KdNode {
    PartitionBox box;
    // valid when not a leaf: children split the box on `dim` after slice `cut`
    std::size_t dim = 0;
    std::size_t cut = 0;
    std::unique_ptr<KdNode> left, right;

    bool leaf() const { return !left; }
};

// Full split tree over the noisy cell histogram dc. Split rule, in order:
// the box must have > min_cells cells, depth < max_depth, and population
// variance of its cell values > xi0; the split dimension is the one with the
// largest index range (ties -> lowest dimension); the cut minimizes
// n1*V1 + n2*V2 over all positions (ties -> leftmost), where each child's V
// is the population variance of its cells and n is its total count with
// negative values clamped to 0 for weighting only.
std::unique_ptr<KdNode> kd_partition_tree(const CubeSchema& schema, const CellVector& dc,
                                          const KdParams& params);

// Leaf boxes of the split tree, in depth-first order. Disjoint and covering.
std::vector<PartitionBox> kd_partition(const CubeSchema& schema, const CellVector& dc,
                                       const KdParams& params);

std::size_t kd_default_max_depth(std::size_t cell_count);

struct SubcubeCount {
    PartitionBox box;
    double count;
};

struct ReleasedHistogram {
    CubeSchema schema;
    std::string strategy;             // "cell" | "dpcube"
    CellVector cell_hist;             // noisy per-cell counts (phase I)
    std::vector<SubcubeCount> boxes;  // noisy per-box counts (phase II); empty for "cell"
    double alpha1 = 0;                // budget spent on cell_hist
    double alpha2 = 0;                // budget spent on boxes (0 for "cell")
    std::uint64_t seed = 0;
    KdParams kd;                      // parameters used for the partition (dpcube only)

    std::vector<PartitionBox> box_list() const;
};

// One noisy count per cell; a single parallel charge of alpha.
CellVector release_cell_histogram(const CubeSchema& schema, const CellVector& x,
                                  PrivacyParam alpha, BudgetLedger& ledger, NoiseSource& src);

ReleasedHistogram release_cell(const CubeSchema& schema, const CellVector& x, PrivacyParam alpha,
                               BudgetLedger& ledger, NoiseSource& src, std::uint64_t seed);

ReleasedHistogram release_dpcube(const CubeSchema& schema, const CellVector& x, double alpha1,
                                 double alpha2, const KdParams& params, BudgetLedger& ledger,
                                 NoiseSource& src, std::uint64_t seed);

// Stacked 0/1 query matrix of the release: box rows first, then the m
// identity rows for the cells.
QueryMatrix query_matrix_of(const ReleasedHistogram& h);

}  // namespace dphist
