#pragma once
// Query estimators over a released histogram.
//
// uniform: each box spreads its noisy count evenly over its cells.
// cell_only: sum the noisy cell histogram inside the query.
// least_squares: consistent per-cell estimates from both histograms. The
// stacked system [box row; identity rows] decouples per box, with closed-form
// pseudo-inverse: x_i = y_i + (y_box - sum y_cells) / (n_p + 1).

#include <vector>

#include "cube.hpp"
#include "partition.hpp"

namespace dphist {

enum class EstimateMethod { uniform, least_squares, cell_only };

EstimateMethod method_from_string(const std::string& s);  // "uniform" | "ls" | "cell"
std::string method_name(EstimateMethod m);

// Closed-form least-squares solve of one box block: design matrix stacks a
// row of ones over the identity, observations are (y_box, y_cells...).
std::vector<double> ls_solve_partition(double y_box, const std::vector<double>& y_cells);

// Per-cell least-squares estimates for the whole release.
CellVector ls_cell_estimates(const ReleasedHistogram& h);

double estimate_uniform(const ReleasedHistogram& h, const LinearQuery& q);
double estimate_cell_only(const ReleasedHistogram& h, const LinearQuery& q);
double estimate_least_squares(const ReleasedHistogram& h, const LinearQuery& q);
double estimate(const ReleasedHistogram& h, const LinearQuery& q, EstimateMethod m);

}  // namespace dphist
