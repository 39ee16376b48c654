#pragma once
// Downstream uses of a released histogram: ID3 decision trees trained on
// (possibly noisy) cell counts, and blocking for record linkage.

#include <memory>
#include <vector>

#include "cube.hpp"
#include "estimate.hpp"
#include "partition.hpp"

namespace dphist {

struct Id3Params {
    std::vector<std::size_t> features;  // schema dims used as predictors
    std::size_t class_dim = 0;          // schema dim holding the class label
    std::size_t max_depth = 0;          // 0 = number of features
};

struct TreeNode {
    bool is_leaf = true;
    std::size_t label = 0;    // class bin (leaves)
    std::size_t feature = 0;  // schema dim (internal nodes)
    std::vector<std::unique_ptr<TreeNode>> children;  // one per feature bin
};

struct DecisionTree {
    CubeSchema schema;
    Id3Params params;
    std::unique_ptr<TreeNode> root;
};

// Count-weighted ID3. `counts` may be exact or noisy per-cell counts;
// negative values are clamped to 0 before any mass or gain computation.
// Split = feature with the largest information gain (ties -> lowest feature
// index); recursion stops on pure nodes, exhausted features, or the depth
// cap; zero-mass branches become leaves with the parent's majority label.
DecisionTree train_id3(const CubeSchema& schema, const CellVector& counts, const Id3Params& p);

// Per-cell training counts from a release: the noisy cell histogram, the
// least-squares estimates, or each box's count spread uniformly over its cells.
CellVector training_counts(const ReleasedHistogram& h, EstimateMethod m);

std::size_t predict(const DecisionTree& tree, const std::vector<std::size_t>& coord);
std::size_t predict(const DecisionTree& tree, const Record& r);
// fraction of records whose class bin matches the prediction
double accuracy(const DecisionTree& tree, const std::vector<Record>& records);

// --- blocking ---

// Box index per record; boxes must partition the cube.
std::vector<std::size_t> assign_blocks(const CubeSchema& schema, const std::vector<Record>& records,
                                       const std::vector<PartitionBox>& boxes);

// 1 - sum_i n_i*m_i / (n*m) for two block-count vectors of equal length.
double reduction_ratio(const std::vector<std::size_t>& counts_a,
                       const std::vector<std::size_t>& counts_b);

// Convenience: block both datasets by the release's subcube boxes.
double blocking_reduction_ratio(const ReleasedHistogram& h, const std::vector<Record>& a,
                                const std::vector<Record>& b);

}  // namespace dphist
