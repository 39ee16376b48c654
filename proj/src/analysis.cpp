#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "noise.hpp"
#include "numeric.hpp"

namespace dphist {

double laplace_sum_tail_bound(std::size_t m, double b, double eps) {
    if (m == 0) throw std::invalid_argument("m must be >= 1");
    if (!(b > 0)) throw std::invalid_argument("b must be > 0");
    if (!(eps >= 0)) throw std::invalid_argument("eps must be >= 0");
    return 1.0 - double(m) * std::exp(-eps / (double(m) * b));
}

double cell_usefulness_alpha(std::size_t m, double delta, double eps) {
    if (m == 0) throw std::invalid_argument("m must be >= 1");
    if (!(delta > 0 && delta < 1)) throw std::invalid_argument("delta must be in (0,1)");
    if (!(eps > 0)) throw std::invalid_argument("eps must be > 0");
    return double(m) * std::log(double(m) / delta) / eps;
}

double bilateral_gamma_pdf(std::size_t n, double alpha, double z) {
    if (n == 0) throw std::invalid_argument("n must be >= 1");
    if (!(alpha > 0)) throw std::invalid_argument("alpha must be > 0");
    double az = std::abs(z);
    // prefactor alpha^n / (2^n Gamma(n)^2) * exp(-alpha|z|), in logs
    double lg_n = std::lgamma(double(n));
    double log_pref = double(n) * (std::log(alpha) - std::log(2.0)) - 2.0 * lg_n - alpha * az;
    // the inner integral over v is a finite sum of gamma integrals:
    //   sum_k C(n-1,k) |z|^(n-1-k) (2 alpha)^(-k) Gamma(n+k)
    // accumulated via log-sum-exp; all terms are positive
    double max_lt = -HUGE_VAL;
    std::vector<double> lt;
    lt.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pw = n - 1 - k;
        if (pw > 0 && az == 0.0) continue;  // |z|^pw vanishes
        double t = lg_n - std::lgamma(double(k + 1)) - std::lgamma(double(n - k))  // log C(n-1,k)
                   + (pw > 0 ? double(pw) * std::log(az) : 0.0)
                   - double(k) * std::log(2.0 * alpha) + std::lgamma(double(n + k));
        lt.push_back(t);
        max_lt = std::max(max_lt, t);
    }
    if (lt.empty()) return 0.0;
    double acc = 0;
    for (double t : lt) acc += std::exp(t - max_lt);
    return std::exp(log_pref + max_lt) * acc;
}

bool uniform_usefulness_check(double gamma, std::size_t s, std::size_t np, double alpha2,
                              double eps, double delta) {
    if (np == 0 || s == 0 || s > np) throw std::invalid_argument("need 1 <= s <= n_p");
    if (!(gamma >= 0)) throw std::invalid_argument("gamma must be >= 0");
    if (!(alpha2 > 0)) throw std::invalid_argument("alpha2 must be > 0");
    if (!(delta > 0 && delta < 1)) throw std::invalid_argument("delta must be in (0,1)");
    if (!(eps >= 0)) throw std::invalid_argument("eps must be >= 0");
    // multiplied-out form of gamma <= (eps + s ln(delta)/(a2 n_p)) / min(s, n_p-s);
    // at s == n_p the denominator is 0 and the check degenerates to the
    // numerator being nonnegative, which this form handles as 0 <= numerator
    double numerator = eps + double(s) * std::log(delta) / (alpha2 * double(np));
    return gamma * double(std::min(s, np - s)) <= numerator;
}

double uniform_error_bound(double gamma, std::size_t s, std::size_t np, double alpha2) {
    if (np == 0 || s == 0 || s > np) throw std::invalid_argument("need 1 <= s <= n_p");
    if (!(gamma >= 0)) throw std::invalid_argument("gamma must be >= 0");
    if (!(alpha2 > 0)) throw std::invalid_argument("alpha2 must be > 0");
    return gamma * double(std::min(s, np - s)) + double(s) / (alpha2 * double(np));
}

double uniform_error_general(std::size_t s, double alpha1, double eta, double rel_tol) {
    if (s == 0) throw std::invalid_argument("s must be >= 1");
    if (!(alpha1 > 0)) throw std::invalid_argument("alpha1 must be > 0");
    if (!(rel_tol > 0)) throw std::invalid_argument("rel_tol must be > 0");
    auto f = [&](double z) { return bilateral_gamma_pdf(s, alpha1, z) * std::abs(eta + z); };
    // the integrand decays like poly * exp(-alpha1 |z|); this cutoff leaves
    // mass far below the requested accuracy
    double cut = std::abs(eta) + 50.0 * double(s) / alpha1;
    // |eta + z| has a kink at z = -eta; integrate each smooth piece separately
    double scale = std::max(std::abs(eta), double(s) / alpha1);
    double tol = 0.01 * rel_tol * scale;
    double lo = -cut, hi = cut, knee = -eta;
    if (knee <= lo || knee >= hi) return integrate(f, lo, hi, tol, 64);
    return integrate(f, lo, knee, tol * 0.5, 64) + integrate(f, knee, hi, tol * 0.5, 64);
}

McResult ls_error_expected(std::size_t s, std::size_t np, double alpha1, double alpha2,
                           std::size_t mc, std::uint64_t seed) {
    if (np == 0 || s == 0 || s > np) throw std::invalid_argument("need 1 <= s <= n_p");
    if (!(alpha1 > 0) || !(alpha2 > 0)) throw std::invalid_argument("alphas must be > 0");
    if (mc < 1000) throw std::invalid_argument("mc must be >= 1000");
    NoiseSource src(seed);
    double b1 = 1.0 / alpha1, b2 = 1.0 / alpha2;
    double w2 = double(s) / double(np + 1);
    double w_in = double(np + 1 - s) / double(np + 1);
    double sum = 0, sumsq = 0;
    for (std::size_t t = 0; t < mc; ++t) {
        double v = w2 * src.laplace(b2);
        for (std::size_t i = 0; i < s; ++i) v += w_in * src.laplace(b1);
        for (std::size_t i = 0; i < np - s; ++i) v -= w2 * src.laplace(b1);
        double a = std::abs(v);
        sum += a;
        sumsq += a * a;
    }
    double mean = sum / double(mc);
    double var = sumsq / double(mc) - mean * mean;
    if (var < 0) var = 0;
    return {mean, std::sqrt(var / double(mc))};
}

}  // namespace dphist
