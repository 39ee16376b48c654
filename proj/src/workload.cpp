#include "workload.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "noise.hpp"

namespace dphist {

namespace {

// unrank k in [0, n(n+1)/2) to the k-th (lo, hi) pair, lo ascending
std::pair<std::size_t, std::size_t> unrank_range(std::size_t k, std::size_t n) {
    for (std::size_t lo = 0; lo < n; ++lo) {
        std::size_t c = n - lo;
        if (k < c) return {lo, lo + k};
        k -= c;
    }
    throw std::logic_error("unrank_range: rank out of bounds");
}

bool band_attainable(const CubeSchema& schema, std::size_t lo, std::size_t hi) {
    // attainable query sizes = products over dims of a range width in [1, n_d]
    std::set<std::size_t> sizes{1};
    for (const auto& d : schema.dims) {
        std::set<std::size_t> next;
        for (std::size_t s : sizes)
            for (std::size_t w = 1; w <= d.size(); ++w)
                if (s <= hi / w) next.insert(s * w);
        sizes = std::move(next);
    }
    auto it = sizes.lower_bound(lo);
    return it != sizes.end() && *it <= hi;
}

}  // namespace

std::vector<LinearQuery> generate_workload(const CubeSchema& schema, const WorkloadParams& p) {
    schema.validate();
    if (p.count == 0) throw std::invalid_argument("workload count must be >= 1");
    bool banded = p.min_size != 0 || p.max_size != 0;
    std::size_t lo_sz = banded ? std::max<std::size_t>(p.min_size, 1) : 1;
    std::size_t hi_sz = banded ? p.max_size : schema.cell_count();
    if (banded) {
        if (lo_sz > hi_sz) throw std::invalid_argument("size band is empty");
        if (!band_attainable(schema, lo_sz, hi_sz))
            throw std::invalid_argument("size band [" + std::to_string(lo_sz) + "," +
                                        std::to_string(hi_sz) + "] unattainable for this schema");
    }
    NoiseSource src(p.seed);
    std::vector<LinearQuery> out;
    out.reserve(p.count);
    std::size_t attempts = 0, cap = 200000 * p.count;
    while (out.size() < p.count) {
        if (++attempts > cap)
            throw std::runtime_error("size band rejection sampling exceeded attempt cap");
        LinearQuery q;
        q.lo.resize(schema.ndims());
        q.hi.resize(schema.ndims());
        std::size_t cells = 1;
        for (std::size_t d = 0; d < schema.ndims(); ++d) {
            std::size_t n = schema.dims[d].size();
            std::size_t k = src.uniform_below(n * (n + 1) / 2);
            auto [lo, hi] = unrank_range(k, n);
            q.lo[d] = lo;
            q.hi[d] = hi;
            cells *= hi - lo + 1;
        }
        if (banded && (cells < lo_sz || cells > hi_sz)) continue;
        out.push_back(std::move(q));
    }
    return out;
}

namespace {

// evaluate all queries with the LS cell vector computed once
double accumulate_metric(const CubeSchema& schema, const CellVector& x,
                         const ReleasedHistogram& h, const std::vector<LinearQuery>& queries,
                         EstimateMethod m, double eps, bool usefulness) {
    if (queries.empty()) throw std::invalid_argument("empty query workload");
    if (x.size() != schema.cell_count())
        throw std::invalid_argument("cell vector length does not match schema");
    CellVector ls;
    if (m == EstimateMethod::least_squares) ls = ls_cell_estimates(h);
    double acc = 0;
    for (const auto& q : queries) {
        double est = m == EstimateMethod::least_squares ? evaluate_query(schema, ls, q)
                                                        : estimate(h, q, m);
        double err = std::abs(est - evaluate_query(schema, x, q));
        acc += usefulness ? (err <= eps ? 1.0 : 0.0) : err;
    }
    return acc / double(queries.size());
}

}  // namespace

double avg_abs_error(const CubeSchema& schema, const CellVector& x, const ReleasedHistogram& h,
                     const std::vector<LinearQuery>& queries, EstimateMethod m) {
    return accumulate_metric(schema, x, h, queries, m, 0.0, false);
}

double empirical_usefulness(const CubeSchema& schema, const CellVector& x,
                            const ReleasedHistogram& h, const std::vector<LinearQuery>& queries,
                            EstimateMethod m, double eps) {
    if (!(eps >= 0)) throw std::invalid_argument("eps must be >= 0");
    return accumulate_metric(schema, x, h, queries, m, eps, true);
}

double weighted_variance(const CubeSchema& schema, const CellVector& x,
                         const std::vector<PartitionBox>& boxes) {
    validate_partition(schema, boxes);
    if (x.size() != schema.cell_count())
        throw std::invalid_argument("cell vector length does not match schema");
    double total = 0;
    for (const auto& box : boxes) {
        auto cells = cells_in_box(schema, box);
        double sum = 0, sumsq = 0;
        for (std::size_t i : cells) {
            sum += x[i];
            sumsq += x[i] * x[i];
        }
        double c = double(cells.size());
        double mean = sum / c;
        double var = sumsq / c - mean * mean;
        if (var < 0) var = 0;
        total += sum * var;
    }
    return total;
}

}  // namespace dphist
