#include "cube.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace dphist {

std::size_t AttributeDomain::bin_of_value(double v) const {
    if (edges.empty())
        throw std::invalid_argument("attribute '" + name + "' is categorical, not numeric");
    if (!(v >= edges.front() && v <= edges.back()))
        throw std::invalid_argument("value " + std::to_string(v) + " outside domain of '" + name + "'");
    // last bin is closed at the top edge
    if (v == edges.back()) return bins.size() - 1;
    std::size_t i = std::upper_bound(edges.begin(), edges.end(), v) - edges.begin();
    return i - 1;
}

std::size_t AttributeDomain::bin_of_label(const std::string& s) const {
    for (std::size_t i = 0; i < bins.size(); ++i)
        if (bins[i] == s) return i;
    throw std::invalid_argument("value '" + s + "' is not a bin of '" + name + "'");
}

AttributeDomain categorical_attribute(std::string name, std::vector<std::string> bins) {
    if (bins.empty()) throw std::invalid_argument("attribute '" + name + "' has no bins");
    return AttributeDomain{std::move(name), std::move(bins), {}};
}

AttributeDomain numeric_attribute(std::string name, std::vector<double> edges) {
    if (edges.size() < 2)
        throw std::invalid_argument("attribute '" + name + "' needs >= 2 edges");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i - 1] < edges[i]))
            throw std::invalid_argument("edges of '" + name + "' must be strictly increasing");
    std::vector<std::string> bins;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        char buf[64];
        auto fmt = [&buf](double v) {
            auto r = std::to_chars(buf, buf + sizeof buf, v);
            return std::string(buf, r.ptr);
        };
        std::string lo = fmt(edges[i]);
        std::string hi = fmt(edges[i + 1]);
        bool last = i + 2 == edges.size();
        bins.push_back("[" + lo + "," + hi + (last ? "]" : ")"));
    }
    return AttributeDomain{std::move(name), std::move(bins), std::move(edges)};
}

std::size_t CubeSchema::cell_count() const {
    std::size_t m = 1;
    for (const auto& d : dims) m *= d.size();
    return m;
}

std::size_t CubeSchema::index_of(const std::vector<std::size_t>& coord) const {
    if (coord.size() != dims.size())
        throw std::invalid_argument("coordinate rank mismatch");
    std::size_t idx = 0;
    for (std::size_t d = 0; d < dims.size(); ++d) {
        if (coord[d] >= dims[d].size())
            throw std::invalid_argument("coordinate out of range in dim " + std::to_string(d));
        idx = idx * dims[d].size() + coord[d];
    }
    return idx;
}

std::vector<std::size_t> CubeSchema::coord_of(std::size_t index) const {
    if (index >= cell_count()) throw std::invalid_argument("cell index out of range");
    std::vector<std::size_t> coord(dims.size());
    for (std::size_t d = dims.size(); d-- > 0;) {
        coord[d] = index % dims[d].size();
        index /= dims[d].size();
    }
    return coord;
}

std::size_t CubeSchema::dim_index(const std::string& name) const {
    for (std::size_t d = 0; d < dims.size(); ++d)
        if (dims[d].name == name) return d;
    throw std::invalid_argument("no attribute named '" + name + "'");
}

void CubeSchema::validate() const {
    if (dims.empty()) throw std::invalid_argument("schema has no attributes");
    std::set<std::string> names;
    std::size_t m = 1;
    for (const auto& d : dims) {
        if (d.name.empty()) throw std::invalid_argument("attribute with empty name");
        if (d.bins.empty()) throw std::invalid_argument("attribute '" + d.name + "' has no bins");
        if (!d.edges.empty() && d.edges.size() != d.bins.size() + 1)
            throw std::invalid_argument("attribute '" + d.name + "' edge/bin count mismatch");
        if (!names.insert(d.name).second)
            throw std::invalid_argument("duplicate attribute name '" + d.name + "'");
        if (m > (std::size_t{1} << 31) / d.size())
            throw std::invalid_argument("cube too large (> 2^31 cells)");
        m *= d.size();
    }
}

std::size_t PartitionBox::cell_count() const {
    std::size_t n = 1;
    for (std::size_t d = 0; d < lo.size(); ++d) n *= hi[d] - lo[d] + 1;
    return n;
}

bool PartitionBox::contains(const std::vector<std::size_t>& coord) const {
    for (std::size_t d = 0; d < lo.size(); ++d)
        if (coord[d] < lo[d] || coord[d] > hi[d]) return false;
    return true;
}

void validate_box(const CubeSchema& schema, const PartitionBox& box) {
    if (box.lo.size() != schema.ndims() || box.hi.size() != schema.ndims())
        throw std::invalid_argument("box rank does not match schema");
    for (std::size_t d = 0; d < box.lo.size(); ++d) {
        if (box.lo[d] > box.hi[d])
            throw std::invalid_argument("box has lo > hi in dim " + std::to_string(d));
        if (box.hi[d] >= schema.dims[d].size())
            throw std::invalid_argument("box exceeds schema in dim " + std::to_string(d));
    }
}

namespace {

// Calls fn(flat_index) for every cell of the box, ascending.
template <class Fn>
void for_each_cell(const CubeSchema& schema, const PartitionBox& box, Fn&& fn) {
    std::size_t nd = schema.ndims();
    std::vector<std::size_t> coord = box.lo;
    for (;;) {
        fn(schema.index_of(coord));
        std::size_t d = nd;
        while (d-- > 0) {
            if (coord[d] < box.hi[d]) {
                ++coord[d];
                break;
            }
            coord[d] = box.lo[d];
            if (d == 0) return;
        }
        if (d == std::size_t(-1)) return;
    }
}

}  // namespace

std::vector<std::size_t> cells_in_box(const CubeSchema& schema, const PartitionBox& box) {
    validate_box(schema, box);
    std::vector<std::size_t> out;
    out.reserve(box.cell_count());
    for_each_cell(schema, box, [&](std::size_t i) { out.push_back(i); });
    std::sort(out.begin(), out.end());
    return out;
}

double box_sum(const CubeSchema& schema, const CellVector& x, const PartitionBox& box) {
    validate_box(schema, box);
    if (x.size() != schema.cell_count())
        throw std::invalid_argument("cell vector length does not match schema");
    double s = 0;
    for_each_cell(schema, box, [&](std::size_t i) { s += x[i]; });
    return s;
}

double evaluate_query(const CubeSchema& schema, const CellVector& x, const LinearQuery& q) {
    return box_sum(schema, x, q);
}

void validate_partition(const CubeSchema& schema, const std::vector<PartitionBox>& boxes) {
    cell_to_box(schema, boxes);
}

std::vector<std::size_t> cell_to_box(const CubeSchema& schema, const std::vector<PartitionBox>& boxes) {
    std::size_t m = schema.cell_count();
    std::vector<std::size_t> owner(m, std::size_t(-1));
    for (std::size_t b = 0; b < boxes.size(); ++b) {
        validate_box(schema, boxes[b]);
        for_each_cell(schema, boxes[b], [&](std::size_t i) {
            if (owner[i] != std::size_t(-1))
                throw std::invalid_argument("boxes overlap at cell " + std::to_string(i));
            owner[i] = b;
        });
    }
    for (std::size_t i = 0; i < m; ++i)
        if (owner[i] == std::size_t(-1))
            throw std::invalid_argument("boxes do not cover cell " + std::to_string(i));
    return owner;
}

std::size_t cell_of(const CubeSchema& schema, const Record& r) {
    if (r.size() != schema.ndims())
        throw std::invalid_argument("record has wrong number of values");
    std::vector<std::size_t> coord(schema.ndims());
    for (std::size_t d = 0; d < schema.ndims(); ++d) {
        const auto& dom = schema.dims[d];
        if (dom.numeric()) {
            const std::string& s = r[d];
            double v = 0;
            auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
                throw std::invalid_argument("non-numeric value '" + s + "' for '" + dom.name + "'");
            coord[d] = dom.bin_of_value(v);
        } else {
            coord[d] = dom.bin_of_label(r[d]);
        }
    }
    return schema.index_of(coord);
}

CellVector ingest(const CubeSchema& schema, const std::vector<Record>& records) {
    schema.validate();
    CellVector x(schema.cell_count(), 0.0);
    for (std::size_t i = 0; i < records.size(); ++i) {
        try {
            x[cell_of(schema, records[i])] += 1.0;
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("record " + std::to_string(i) + ": " + e.what());
        }
    }
    return x;
}

double QueryMatrix::row_sum(std::size_t r) const {
    double s = 0;
    for (std::size_t c = 0; c < cols; ++c) s += at(r, c);
    return s;
}

QueryMatrix query_matrix(const CubeSchema& schema, const std::vector<LinearQuery>& queries) {
    QueryMatrix h;
    h.rows = queries.size();
    h.cols = schema.cell_count();
    h.a.assign(h.rows * h.cols, 0.0);
    for (std::size_t r = 0; r < queries.size(); ++r) {
        validate_box(schema, queries[r]);
        for_each_cell(schema, queries[r], [&](std::size_t c) { h.at(r, c) = 1.0; });
    }
    return h;
}

}  // namespace dphist
