#include "noise.hpp"

#include <cmath>

namespace dphist {

double NoiseSource::laplace(double b) {
    if (!(b > 0)) throw std::invalid_argument("laplace scale must be > 0");
    double u = uniform01();
    double c = u - 0.5;
    // u is never exactly 0, 0.5 or 1, so the log argument stays in (0, 1]
    double s = c < 0 ? -1.0 : 1.0;
    return -b * s * std::log(1.0 - 2.0 * std::abs(c));
}

std::uint64_t NoiseSource::uniform_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below(0)");
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
        std::uint64_t v = bits();
        if (v < limit) return v % n;
    }
}

double laplace_sample(double b, NoiseSource& src) { return src.laplace(b); }

BudgetLedger::BudgetLedger(double total_alpha) : total_(total_alpha) {
    if (!(total_alpha > 0)) throw std::invalid_argument("total budget must be > 0");
}

void BudgetLedger::charge(const std::string& label, double alpha, ChargeKind kind) {
    if (!(alpha > 0)) throw std::invalid_argument("charge must be > 0");
    // tiny slack so splits like (a/4, a - a/4) that round an ulp above the
    // total are not refused; a real overrun is orders of magnitude larger
    double slack = 1e-12 * std::max(1.0, total_);
    if (spent_ + alpha > total_ + slack)
        throw BudgetExhausted("budget exhausted: charge '" + label + "' of " +
                              std::to_string(alpha) + " with " + std::to_string(total_ - spent_) +
                              " of " + std::to_string(total_) + " remaining");
    spent_ += alpha;
    log_.push_back({label, alpha, kind});
}

double noisy_count(double true_count, PrivacyParam alpha, BudgetLedger& ledger,
                   NoiseSource& src, const std::string& label) {
    ledger.charge(label, alpha.alpha, ChargeKind::sequential);
    return true_count + src.laplace(1.0 / alpha.alpha);
}

std::vector<double> partitioned_noisy_counts(const CubeSchema& schema, const CellVector& x,
                                             const std::vector<PartitionBox>& boxes,
                                             PrivacyParam alpha, BudgetLedger& ledger,
                                             NoiseSource& src, const std::string& label) {
    validate_partition(schema, boxes);
    if (x.size() != schema.cell_count())
        throw std::invalid_argument("cell vector length does not match schema");
    // one parallel charge covers the whole disjoint family
    ledger.charge(label, alpha.alpha, ChargeKind::parallel);
    std::vector<double> out;
    out.reserve(boxes.size());
    double b = 1.0 / alpha.alpha;
    for (const auto& box : boxes)
        out.push_back(box_sum(schema, x, box) + src.laplace(b));
    return out;
}

}  // namespace dphist
