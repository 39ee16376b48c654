#include "apps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dphist {

namespace {

double entropy(const std::vector<double>& mass) {
    double total = 0;
    for (double w : mass) total += w;
    if (total <= 0) return 0;
    double h = 0;
    for (double w : mass) {
        if (w <= 0) continue;
        double p = w / total;
        h -= p * std::log2(p);
    }
    return h;
}

struct Trainer {
    const CubeSchema& schema;
    const CellVector& w;  // clamped counts
    const Id3Params& p;
    std::vector<std::size_t> cell_coord;  // scratch

    // class masses of the cells consistent with `fixed` (-1 = free dim)
    std::vector<double> class_mass(const std::vector<std::ptrdiff_t>& fixed) const {
        std::vector<double> mass(schema.dims[p.class_dim].size(), 0.0);
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] == 0) continue;
            auto coord = schema.coord_of(i);
            bool ok = true;
            for (std::size_t d = 0; d < fixed.size() && ok; ++d)
                if (fixed[d] >= 0 && coord[d] != std::size_t(fixed[d])) ok = false;
            if (ok) mass[coord[p.class_dim]] += w[i];
        }
        return mass;
    }

    static std::size_t majority(const std::vector<double>& mass) {
        // lowest bin wins ties (and the all-zero case)
        std::size_t best = 0;
        for (std::size_t c = 1; c < mass.size(); ++c)
            if (mass[c] > mass[best]) best = c;
        return best;
    }

    std::unique_ptr<TreeNode> grow(std::vector<std::ptrdiff_t>& fixed,
                                   const std::vector<std::size_t>& remaining, std::size_t depth,
                                   std::size_t parent_majority) const {
        auto node = std::make_unique<TreeNode>();
        auto mass = class_mass(fixed);
        double total = 0;
        for (double v : mass) total += v;
        if (total <= 0) {
            node->label = parent_majority;  // zero-mass branch inherits
            return node;
        }
        std::size_t label = majority(mass);
        double h_node = entropy(mass);
        if (remaining.empty() || depth >= p.max_depth || h_node <= 0) {
            node->label = label;
            return node;
        }

        // information gain per candidate feature; ties -> lowest feature index
        std::size_t best_f = remaining[0];
        double best_gain = -1;
        for (std::size_t f : remaining) {
            double cond = 0;
            for (std::size_t v = 0; v < schema.dims[f].size(); ++v) {
                fixed[f] = std::ptrdiff_t(v);
                auto child = class_mass(fixed);
                double wv = 0;
                for (double c : child) wv += c;
                if (wv > 0) cond += wv / total * entropy(child);
            }
            fixed[f] = -1;
            double gain = h_node - cond;
            if (gain > best_gain + 1e-12) {
                best_gain = gain;
                best_f = f;
            }
        }

        node->is_leaf = false;
        node->feature = best_f;
        node->label = label;
        std::vector<std::size_t> rest;
        for (std::size_t f : remaining)
            if (f != best_f) rest.push_back(f);
        for (std::size_t v = 0; v < schema.dims[best_f].size(); ++v) {
            fixed[best_f] = std::ptrdiff_t(v);
            node->children.push_back(grow(fixed, rest, depth + 1, label));
        }
        fixed[best_f] = -1;
        return node;
    }
};

}  // namespace

DecisionTree train_id3(const CubeSchema& schema, const CellVector& counts, const Id3Params& p) {
    schema.validate();
    if (counts.size() != schema.cell_count())
        throw std::invalid_argument("cell vector length does not match schema");
    if (p.class_dim >= schema.ndims()) throw std::invalid_argument("class_dim out of range");
    if (p.features.empty()) throw std::invalid_argument("no features given");
    std::vector<bool> used(schema.ndims(), false);
    for (std::size_t f : p.features) {
        if (f >= schema.ndims()) throw std::invalid_argument("feature index out of range");
        if (f == p.class_dim) throw std::invalid_argument("class_dim cannot be a feature");
        if (used[f]) throw std::invalid_argument("duplicate feature index");
        used[f] = true;
    }

    Id3Params params = p;
    if (params.max_depth == 0) params.max_depth = p.features.size();

    CellVector w(counts);
    for (double& v : w)
        if (v < 0) v = 0;

    DecisionTree tree{schema, params, nullptr};
    Trainer tr{schema, w, params, {}};
    std::vector<std::ptrdiff_t> fixed(schema.ndims(), -1);
    std::vector<std::size_t> remaining(params.features);
    std::sort(remaining.begin(), remaining.end());
    auto root_mass = tr.class_mass(fixed);
    tree.root = tr.grow(fixed, remaining, 0, Trainer::majority(root_mass));
    return tree;
}

CellVector training_counts(const ReleasedHistogram& h, EstimateMethod m) {
    switch (m) {
        case EstimateMethod::cell_only: {
            if (h.cell_hist.size() != h.schema.cell_count())
                throw std::invalid_argument("release cell histogram has wrong length");
            return h.cell_hist;
        }
        case EstimateMethod::least_squares: return ls_cell_estimates(h);
        case EstimateMethod::uniform: {
            if (h.boxes.empty())
                throw std::invalid_argument("uniform training counts need a subcube histogram");
            CellVector out(h.schema.cell_count(), 0.0);
            for (const auto& sc : h.boxes) {
                double share = sc.count / double(sc.box.cell_count());
                for (std::size_t i : cells_in_box(h.schema, sc.box)) out[i] = share;
            }
            return out;
        }
    }
    throw std::invalid_argument("bad method enum");
}

std::size_t predict(const DecisionTree& tree, const std::vector<std::size_t>& coord) {
    if (coord.size() != tree.schema.ndims())
        throw std::invalid_argument("coordinate rank mismatch");
    const TreeNode* node = tree.root.get();
    while (!node->is_leaf) node = node->children[coord[node->feature]].get();
    return node->label;
}

std::size_t predict(const DecisionTree& tree, const Record& r) {
    return predict(tree, tree.schema.coord_of(cell_of(tree.schema, r)));
}

double accuracy(const DecisionTree& tree, const std::vector<Record>& records) {
    if (records.empty()) throw std::invalid_argument("empty record set");
    std::size_t hits = 0;
    for (const auto& r : records) {
        auto coord = tree.schema.coord_of(cell_of(tree.schema, r));
        if (predict(tree, coord) == coord[tree.params.class_dim]) ++hits;
    }
    return double(hits) / double(records.size());
}

std::vector<std::size_t> assign_blocks(const CubeSchema& schema, const std::vector<Record>& records,
                                       const std::vector<PartitionBox>& boxes) {
    auto owner = cell_to_box(schema, boxes);
    std::vector<std::size_t> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(owner[cell_of(schema, r)]);
    return out;
}

double reduction_ratio(const std::vector<std::size_t>& counts_a,
                       const std::vector<std::size_t>& counts_b) {
    if (counts_a.size() != counts_b.size())
        throw std::invalid_argument("block count vectors differ in length");
    double n = 0, m = 0, cross = 0;
    for (std::size_t i = 0; i < counts_a.size(); ++i) {
        n += double(counts_a[i]);
        m += double(counts_b[i]);
        cross += double(counts_a[i]) * double(counts_b[i]);
    }
    if (n == 0 || m == 0) throw std::invalid_argument("reduction ratio of an empty dataset");
    return 1.0 - cross / (n * m);
}

double blocking_reduction_ratio(const ReleasedHistogram& h, const std::vector<Record>& a,
                                const std::vector<Record>& b) {
    if (h.boxes.empty())
        throw std::invalid_argument("blocking needs a release with a subcube histogram");
    if (a.empty() || b.empty()) throw std::invalid_argument("blocking over an empty dataset");
    auto boxes = h.box_list();
    auto ba = assign_blocks(h.schema, a, boxes);
    auto bb = assign_blocks(h.schema, b, boxes);
    std::vector<std::size_t> ca(boxes.size(), 0), cb(boxes.size(), 0);
    for (std::size_t i : ba) ++ca[i];
    for (std::size_t i : bb) ++cb[i];
    return reduction_ratio(ca, cb);
}

}  // namespace dphist
