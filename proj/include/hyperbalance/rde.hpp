// rde.hpp - population dynamics for the recursive distributional equations
// of the Galton-Watson limit, and Monte-Carlo evaluation of the mean-excess
// function and the limiting maximum load.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperbalance/genmodel.hpp"

namespace hb {

// pools[k] holds samples of the law Q_k, one pool per edge size with E[Gamma(k)] > 0.
struct RDEPool {
    std::map<int, std::vector<double>> pools;
    std::size_t iterations = 0;

    std::size_t size() const { return pools.empty() ? 0 : pools.begin()->second.size(); }
};

struct RDEParams {
    std::size_t pool_size = 100'000;
    std::size_t max_iterations = 200;
    double ks_threshold = 5e-3;
    std::size_t ks_quantiles = 512;
    std::size_t eval_samples = 100'000;
    double rho_tolerance = 1e-2;
    std::uint64_t seed = 1;
    unsigned workers = 1;

    void validate() const;
};

struct RDEDiagnostics {
    std::vector<double> ks_trajectory;
    std::size_t iterations = 0;
    bool converged = false;
};

struct MeanExcessEstimate {
    double t = 0.0;
    double phi = 0.0;
    double std_error = 0.0;
    double term1 = 0.0;  // sum_k E[Gamma(k)]/k * P(X_1^+ + ... + X_k^+ < 1)
    double term2 = 0.0;  // t * P(sum of the Y's > t)
};

RDEPool initial_pool(const TypeDistribution& p, double t, std::size_t pool_size);

// One resampling step: each new entry of pool k is
//   t - sum_{k'} sum_{i <= Gamma(k')} [1 - X^+_{k',i,1} - ... - X^+_{k',i,k'-1}]_0^1
// with Gamma ~ size_biased(p, k) and the X's drawn uniformly from the current pools.
// Entries are produced in fixed-size chunks with per-chunk seeds, so the
// output depends on the seed only, not on the worker count.
RDEPool rde_iterate(const SizeBiasedFamily& family, double t, const RDEPool& pools, std::uint64_t seed,
                    unsigned workers = 1);
RDEPool rde_iterate(const TypeDistribution& p, double t, const RDEPool& pools, std::uint64_t seed,
                    unsigned workers = 1);

// Kolmogorov distance between the empirical laws, evaluated at `quantiles`
// quantiles of `next`.
double ks_distance(const std::vector<double>& previous, const std::vector<double>& next, std::size_t quantiles);

// Iterates from the all-t pools until the largest per-pool Kolmogorov distance
// between successive pools is <= ks_threshold or the iteration cap is hit.
std::pair<RDEPool, RDEDiagnostics> rde_solve(const TypeDistribution& p, double t, const RDEParams& params);

MeanExcessEstimate mean_excess(const TypeDistribution& p, double t, const RDEPool& pools, std::size_t samples,
                               std::uint64_t seed);

// sup{t : Phi(t) > 0}, with Phi(t) > 0 declared when phi > 3 * stderr,
// by bisection over [0, max degree].
double rho_limit(const TypeDistribution& p, const RDEParams& params);

std::string pools_csv(const RDEPool& pools);
nlohmann::json to_json(const MeanExcessEstimate& m);

}  // namespace hb
