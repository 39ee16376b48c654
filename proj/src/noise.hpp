#pragma once
// Laplace noise with seeded determinism, and privacy budget accounting.
//
// Counting queries have sensitivity 1, so a mechanism answering with
// true + Lap(1/alpha) noise spends alpha of the budget. Charges on one
// ledger compose sequentially (they add); a family of queries over disjoint
// subsets of the data composes in parallel (one charge for the family).

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cube.hpp"

namespace dphist {

struct PrivacyParam {
    double alpha;
    explicit PrivacyParam(double a) : alpha(a) {
        if (!(a > 0)) throw std::invalid_argument("alpha must be > 0");
    }
};

// Deterministic noise stream: identical seed + call sequence => identical
// samples, independent of platform stdlib details (raw 64-bit draws are
// mapped to (0,1) directly rather than through distribution objects).
class NoiseSource {
public:
    explicit NoiseSource(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { ++draws_; return eng_(); }

    // 53-bit uniform, strictly inside (0,1)
    double uniform01() { return (double(bits() >> 11) + 0.5) * 0x1.0p-53; }

    // exact inverse-CDF sample of Lap(0, b)
    double laplace(double b);

    // uniform over {0, 1, ..., n-1} via rejection (exact)
    std::uint64_t uniform_below(std::uint64_t n);

    std::uint64_t draws() const { return draws_; }

private:
    std::mt19937_64 eng_;
    std::uint64_t draws_ = 0;
};

double laplace_sample(double b, NoiseSource& src);

struct BudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ChargeKind { sequential, parallel };

struct ChargeEntry {
    std::string label;
    double alpha;
    ChargeKind kind;
};

// Tracks spending against a fixed total budget. A charge that would exceed
// the total is refused (throws); there is no silent degradation. Callers
// charge once per parallel family, per query otherwise.
class BudgetLedger {
public:
    explicit BudgetLedger(double total_alpha);

    void charge(const std::string& label, double alpha, ChargeKind kind);
    double total() const { return total_; }
    double spent() const { return spent_; }
    double remaining() const { return total_ - spent_; }
    const std::vector<ChargeEntry>& log() const { return log_; }

private:
    double total_;
    double spent_ = 0;
    std::vector<ChargeEntry> log_;
};

// True count + Lap(1/alpha); charges alpha sequentially.
double noisy_count(double true_count, PrivacyParam alpha, BudgetLedger& ledger,
                   NoiseSource& src, const std::string& label = "noisy_count");

// Independent noisy counts for a disjoint-and-covering family of boxes;
// the whole family is one parallel charge of alpha.
std::vector<double> partitioned_noisy_counts(const CubeSchema& schema, const CellVector& x,
                                             const std::vector<PartitionBox>& boxes,
                                             PrivacyParam alpha, BudgetLedger& ledger,
                                             NoiseSource& src,
                                             const std::string& label = "partitioned_noisy_counts");

}  // namespace dphist
