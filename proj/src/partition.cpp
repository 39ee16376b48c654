#include "partition.hpp"

#include <cmath>
#include <stdexcept>

namespace dphist {

namespace {

struct Moments {
    double sum = 0, sumsq = 0, clamped = 0;
    std::size_t cells = 0;

    void add(double v) {
        sum += v;
        sumsq += v * v;
        clamped += v > 0 ? v : 0.0;
        ++cells;
    }
    void merge(const Moments& o) {
        sum += o.sum;
        sumsq += o.sumsq;
        clamped += o.clamped;
        cells += o.cells;
    }
    double variance() const {
        if (cells == 0) return 0;
        double mean = sum / double(cells);
        double v = sumsq / double(cells) - mean * mean;
        return v > 0 ? v : 0.0;  // guard tiny negative from cancellation
    }
    // weighted variance contribution: total count (clamped at 0) times V
    double cost() const { return clamped * variance(); }
};

Moments box_moments(const CubeSchema& schema, const CellVector& dc, const PartitionBox& box) {
    Moments m;
    for (std::size_t i : cells_in_box(schema, box)) m.add(dc[i]);
    return m;
}

// Moments of each slice of `box` along `dim`, indexed relative to box.lo[dim].
std::vector<Moments> slice_moments(const CubeSchema& schema, const CellVector& dc,
                                   const PartitionBox& box, std::size_t dim) {
    std::vector<Moments> out(box.hi[dim] - box.lo[dim] + 1);
    for (std::size_t i : cells_in_box(schema, box)) {
        std::size_t k = schema.coord_of(i)[dim] - box.lo[dim];
        out[k].add(dc[i]);
    }
    return out;
}

void build(const CubeSchema& schema, const CellVector& dc, const KdParams& p, KdNode* node,
           std::size_t depth) {
    const PartitionBox& box = node->box;
    if (box.cell_count() <= p.min_cells || depth >= p.max_depth) return;
    if (!(box_moments(schema, dc, box).variance() > p.xi0)) return;

    // split dimension: largest index range, ties to the lowest dimension
    std::size_t dim = 0, range = 0;
    for (std::size_t d = 0; d < schema.ndims(); ++d) {
        std::size_t r = box.hi[d] - box.lo[d] + 1;
        if (r > range) {
            range = r;
            dim = d;
        }
    }
    if (range < 2) return;

    auto slices = slice_moments(schema, dc, box, dim);
    // best cut minimizes n1*V1 + n2*V2; strict < keeps the leftmost tie
    std::size_t best_cut = 0;
    double best_cost = 0;
    bool have = false;
    for (std::size_t cut = 0; cut + 1 < slices.size(); ++cut) {
        Moments left, right;
        for (std::size_t k = 0; k < slices.size(); ++k)
            (k <= cut ? left : right).merge(slices[k]);
        double cost = left.cost() + right.cost();
        if (!have || cost < best_cost) {
            have = true;
            best_cost = cost;
            best_cut = cut;
        }
    }

    node->dim = dim;
    node->cut = box.lo[dim] + best_cut;
    PartitionBox lbox = box, rbox = box;
    lbox.hi[dim] = node->cut;
    rbox.lo[dim] = node->cut + 1;
    node->left = std::make_unique<KdNode>();
    node->left->box = std::move(lbox);
    node->right = std::make_unique<KdNode>();
    node->right->box = std::move(rbox);
    build(schema, dc, p, node->left.get(), depth + 1);
    build(schema, dc, p, node->right.get(), depth + 1);
}

void collect_leaves(const KdNode* node, std::vector<PartitionBox>& out) {
    if (node->leaf()) {
        out.push_back(node->box);
        return;
    }
    collect_leaves(node->left.get(), out);
    collect_leaves(node->right.get(), out);
}

}  // namespace

std::size_t kd_default_max_depth(std::size_t cell_count) {
    std::size_t d = 0;
    while ((std::size_t{1} << d) < cell_count) ++d;  // ceil(log2 m)
    return d + 2;
}

std::unique_ptr<KdNode> kd_partition_tree(const CubeSchema& schema, const CellVector& dc,
                                          const KdParams& params) {
    schema.validate();
    if (dc.size() != schema.cell_count())
        throw std::invalid_argument("cell vector length does not match schema");
    if (!(params.xi0 >= 0)) throw std::invalid_argument("xi0 must be >= 0");
    if (params.min_cells < 1) throw std::invalid_argument("min_cells must be >= 1");
    KdParams p = params;
    if (p.max_depth == 0) p.max_depth = kd_default_max_depth(schema.cell_count());

    auto root = std::make_unique<KdNode>();
    root->box.lo.assign(schema.ndims(), 0);
    root->box.hi.resize(schema.ndims());
    for (std::size_t d = 0; d < schema.ndims(); ++d) root->box.hi[d] = schema.dims[d].size() - 1;
    build(schema, dc, p, root.get(), 0);
    return root;
}

std::vector<PartitionBox> kd_partition(const CubeSchema& schema, const CellVector& dc,
                                       const KdParams& params) {
    auto tree = kd_partition_tree(schema, dc, params);
    std::vector<PartitionBox> out;
    collect_leaves(tree.get(), out);
    return out;
}

std::vector<PartitionBox> ReleasedHistogram::box_list() const {
    std::vector<PartitionBox> out;
    out.reserve(boxes.size());
    for (const auto& b : boxes) out.push_back(b.box);
    return out;
}

CellVector release_cell_histogram(const CubeSchema& schema, const CellVector& x,
                                  PrivacyParam alpha, BudgetLedger& ledger, NoiseSource& src) {
    std::vector<PartitionBox> cells(schema.cell_count());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        auto coord = schema.coord_of(i);
        cells[i].lo = coord;
        cells[i].hi = coord;
    }
    return partitioned_noisy_counts(schema, x, cells, alpha, ledger, src, "cell_histogram");
}

ReleasedHistogram release_cell(const CubeSchema& schema, const CellVector& x, PrivacyParam alpha,
                               BudgetLedger& ledger, NoiseSource& src, std::uint64_t seed) {
    ReleasedHistogram h;
    h.schema = schema;
    h.strategy = "cell";
    h.cell_hist = release_cell_histogram(schema, x, alpha, ledger, src);
    h.alpha1 = alpha.alpha;
    h.alpha2 = 0;
    h.seed = seed;
    return h;
}

ReleasedHistogram release_dpcube(const CubeSchema& schema, const CellVector& x, double alpha1,
                                 double alpha2, const KdParams& params, BudgetLedger& ledger,
                                 NoiseSource& src, std::uint64_t seed) {
    ReleasedHistogram h;
    h.schema = schema;
    h.strategy = "dpcube";
    h.seed = seed;
    h.kd = params;
    h.alpha1 = PrivacyParam(alpha1).alpha;
    h.alpha2 = PrivacyParam(alpha2).alpha;
    // phase I: noisy cell histogram doubles as the synthetic partitioning input
    h.cell_hist = release_cell_histogram(schema, x, PrivacyParam(alpha1), ledger, src);
    // the kd tree reads only the already-released noisy histogram: free
    auto boxes = kd_partition(schema, h.cell_hist, params);
    // phase II: noisy counts of the boxes over the original data
    auto counts = partitioned_noisy_counts(schema, x, boxes, PrivacyParam(alpha2), ledger, src,
                                           "subcube_histogram");
    h.boxes.reserve(boxes.size());
    for (std::size_t i = 0; i < boxes.size(); ++i)
        h.boxes.push_back({std::move(boxes[i]), counts[i]});
    return h;
}

QueryMatrix query_matrix_of(const ReleasedHistogram& h) {
    std::vector<LinearQuery> rows = h.box_list();
    std::size_t m = h.schema.cell_count();
    for (std::size_t i = 0; i < m; ++i) {
        auto coord = h.schema.coord_of(i);
        rows.push_back(PartitionBox{coord, coord});
    }
    return query_matrix(h.schema, rows);
}

}  // namespace dphist
