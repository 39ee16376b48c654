#include "estimate.hpp"

#include <stdexcept>

namespace dphist {

EstimateMethod method_from_string(const std::string& s) {
    if (s == "uniform") return EstimateMethod::uniform;
    if (s == "ls") return EstimateMethod::least_squares;
    if (s == "cell") return EstimateMethod::cell_only;
    throw std::invalid_argument("unknown estimate method '" + s + "'");
}

std::string method_name(EstimateMethod m) {
    switch (m) {
        case EstimateMethod::uniform: return "uniform";
        case EstimateMethod::least_squares: return "ls";
        case EstimateMethod::cell_only: return "cell";
    }
    throw std::invalid_argument("bad method enum");
}

std::vector<double> ls_solve_partition(double y_box, const std::vector<double>& y_cells) {
    std::size_t n = y_cells.size();
    if (n == 0) throw std::invalid_argument("ls_solve_partition: empty box");
    double t = 0;
    for (double y : y_cells) t += y;
    // equivalent to the pseudo-inverse rows [1, n e_i - (1 - e_i)] / (n+1):
    // every cell shifts by the box residual spread over n+1
    double shift = (y_box - t) / double(n + 1);
    std::vector<double> out(y_cells);
    for (double& v : out) v += shift;
    return out;
}

namespace {

void require_boxes(const ReleasedHistogram& h, const char* method) {
    if (h.boxes.empty())
        throw std::invalid_argument(std::string(method) +
                                    " estimation needs a release with a subcube histogram");
}

// product over dims of the overlap between query and box, in cells
std::size_t overlap_cells(const LinearQuery& q, const PartitionBox& box) {
    std::size_t n = 1;
    for (std::size_t d = 0; d < q.lo.size(); ++d) {
        std::size_t lo = std::max(q.lo[d], box.lo[d]);
        std::size_t hi = std::min(q.hi[d], box.hi[d]);
        if (lo > hi) return 0;
        n *= hi - lo + 1;
    }
    return n;
}

}  // namespace

CellVector ls_cell_estimates(const ReleasedHistogram& h) {
    require_boxes(h, "least-squares");
    if (h.cell_hist.size() != h.schema.cell_count())
        throw std::invalid_argument("release cell histogram has wrong length");
    CellVector out(h.cell_hist.size(), 0.0);
    std::vector<bool> seen(out.size(), false);
    for (const auto& sc : h.boxes) {
        auto cells = cells_in_box(h.schema, sc.box);
        std::vector<double> y;
        y.reserve(cells.size());
        for (std::size_t i : cells) {
            if (seen[i]) throw std::invalid_argument("release boxes overlap");
            seen[i] = true;
            y.push_back(h.cell_hist[i]);
        }
        auto xhat = ls_solve_partition(sc.count, y);
        for (std::size_t k = 0; k < cells.size(); ++k) out[cells[k]] = xhat[k];
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw std::invalid_argument("release boxes do not cover the cube");
    return out;
}

double estimate_uniform(const ReleasedHistogram& h, const LinearQuery& q) {
    require_boxes(h, "uniform");
    validate_box(h.schema, q);
    double total = 0;
    for (const auto& sc : h.boxes) {
        std::size_t s = overlap_cells(q, sc.box);
        if (s) total += double(s) / double(sc.box.cell_count()) * sc.count;
    }
    return total;
}

double estimate_cell_only(const ReleasedHistogram& h, const LinearQuery& q) {
    if (h.cell_hist.size() != h.schema.cell_count())
        throw std::invalid_argument("release cell histogram has wrong length");
    return evaluate_query(h.schema, h.cell_hist, q);
}

double estimate_least_squares(const ReleasedHistogram& h, const LinearQuery& q) {
    CellVector xhat = ls_cell_estimates(h);
    return evaluate_query(h.schema, xhat, q);
}

double estimate(const ReleasedHistogram& h, const LinearQuery& q, EstimateMethod m) {
    switch (m) {
        case EstimateMethod::uniform: return estimate_uniform(h, q);
        case EstimateMethod::least_squares: return estimate_least_squares(h, q);
        case EstimateMethod::cell_only: return estimate_cell_only(h, q);
    }
    throw std::invalid_argument("bad method enum");
}

}  // namespace dphist
