#pragma once
// Multidimensional data cube: attribute domains, flattened cell counts,
// axis-aligned boxes, and linear counting queries.
//
// Cells are linearized row-major with the first schema dimension as the
// slowest-varying index. All per-dimension ranges are inclusive bin indices.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace dphist {

// One attribute. Bins are an ordered list of labels; numeric attributes carry
// n+1 edges for n bins (half-open [e_i, e_{i+1}), last bin closed at the top).
struct AttributeDomain {
    std::string name;
    std::vector<std::string> bins;
    std::vector<double> edges;  // empty for categorical attributes

    bool numeric() const { return !edges.empty(); }
    std::size_t size() const { return bins.size(); }
    std::size_t bin_of_value(double v) const;             // throws if outside [edges.front(), edges.back()]
    std::size_t bin_of_label(const std::string& s) const; // exact label match
};

AttributeDomain categorical_attribute(std::string name, std::vector<std::string> bins);
AttributeDomain numeric_attribute(std::string name, std::vector<double> edges);

struct CubeSchema {
    std::vector<AttributeDomain> dims;

    std::size_t ndims() const { return dims.size(); }
    std::size_t cell_count() const;
    std::size_t index_of(const std::vector<std::size_t>& coord) const;
    std::vector<std::size_t> coord_of(std::size_t index) const;
    std::size_t dim_index(const std::string& name) const;  // throws on unknown name
    void validate() const;  // >=1 dim, every dim nonempty, unique names, <= 2^31 cells
};

// Exact or noisy per-cell counts, length == schema.cell_count().
using CellVector = std::vector<double>;

// Axis-aligned set of cells: inclusive bin range per dimension.
struct PartitionBox {
    std::vector<std::size_t> lo, hi;

    std::size_t cell_count() const;
    bool contains(const std::vector<std::size_t>& coord) const;
};

// A counting query is the same shape: answer = sum of cells in the box.
using LinearQuery = PartitionBox;

void validate_box(const CubeSchema& schema, const PartitionBox& box);
std::vector<std::size_t> cells_in_box(const CubeSchema& schema, const PartitionBox& box);  // ascending
double box_sum(const CubeSchema& schema, const CellVector& x, const PartitionBox& box);
double evaluate_query(const CubeSchema& schema, const CellVector& x, const LinearQuery& q);

// Checks that boxes are pairwise disjoint and jointly cover every cell.
void validate_partition(const CubeSchema& schema, const std::vector<PartitionBox>& boxes);
// Cell index -> index of the covering box. Validates the partition.
std::vector<std::size_t> cell_to_box(const CubeSchema& schema, const std::vector<PartitionBox>& boxes);

// One record = one raw value per schema dimension, in schema order.
// Categorical values must equal a bin label; numeric ones are parsed and
// discretized through the edges.
using Record = std::vector<std::string>;

std::size_t cell_of(const CubeSchema& schema, const Record& r);  // throws outside the domain
CellVector ingest(const CubeSchema& schema, const std::vector<Record>& records);

// Dense 0/1 query matrix, rows = queries, cols = cells (row-major storage).
struct QueryMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    double at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
    double& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    double row_sum(std::size_t r) const;
};

QueryMatrix query_matrix(const CubeSchema& schema, const std::vector<LinearQuery>& queries);

}  // namespace dphist
