#pragma once
// Closed-form and Monte-Carlo error analysis for the release strategies.

#include <cstddef>
#include <cstdint>

namespace dphist {

// Pr[ sum of m iid |Lap(b)| stays within eps in every coordinate... ] lower
// bound for a size-m query over noisy cells: 1 - m*exp(-eps/(m*b)). May be
// <= 0 (vacuous) for small eps; returned unclamped.
double laplace_sum_tail_bound(std::size_t m, double b, double eps);

// Budget that makes the cell histogram (eps, delta)-useful: m*ln(m/delta)/eps.
double cell_usefulness_alpha(std::size_t m, double delta, double eps);

// Density of the sum of n iid Lap(1/alpha) variables at z.
double bilateral_gamma_pdf(std::size_t n, double alpha, double z);

// Whether the uniform estimator on a gamma-smooth box of n_p cells is
// (eps, delta)-useful for size-s queries:
//   gamma * min(s, n_p - s) <= eps + s*ln(delta) / (alpha2 * n_p)
bool uniform_usefulness_check(double gamma, std::size_t s, std::size_t np, double alpha2,
                              double eps, double delta);

// Worst-case expected uniform-estimation error on gamma-smooth data:
//   gamma * min(s, n_p - s) + s / (alpha2 * n_p)
double uniform_error_bound(double gamma, std::size_t s, std::size_t np, double alpha2);

// General-case expected uniform-estimation error given the observed
// inconsistency eta: integral of f_s(z, alpha1) * |eta + z| dz.
double uniform_error_general(std::size_t s, double alpha1, double eta, double rel_tol = 1e-4);

struct McResult {
    double mean;
    double se;
};

// Expected |query error| of the least-squares estimator by Monte Carlo over
// the noise decomposition
//   s/(n_p+1) * N(a2) + (n_p+1-s)/(n_p+1) * sum_{i<=s} N_i(a1)
//                     - s/(n_p+1) * sum_{i<=n_p-s} N_i(a1).
// mc >= 1000 required.
McResult ls_error_expected(std::size_t s, std::size_t np, double alpha1, double alpha2,
                           std::size_t mc, std::uint64_t seed);

}  // namespace dphist
