#include "hyperbalance/rde.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "hyperbalance/rng.hpp"

namespace hb {

namespace {

constexpr std::size_t kChunk = 4096;

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double draw(const std::vector<double>& pool, Rng& rng) { return pool[uniform_index(rng, pool.size())]; }

// [1 - Z_1^+ - ... - Z_{k-1}^+]_0^1 with Z's from pool k.
double edge_share(const std::vector<double>& pool, int k, Rng& rng) {
    double s = 0.0;
    for (int j = 1; j < k; ++j) s += std::max(draw(pool, rng), 0.0);
    return clamp01(1.0 - s);
}

double total_share(const TypeVector& gamma, const RDEPool& pools, Rng& rng) {
    double total = 0.0;
    for (auto [k, count] : gamma.counts) {
        const auto& pool = pools.pools.at(k);
        for (int i = 0; i < count; ++i) total += edge_share(pool, k, rng);
    }
    return total;
}

}  // namespace

void RDEParams::validate() const {
    if (pool_size < 1 || max_iterations < 1 || ks_quantiles < 1 || eval_samples < 1 || workers < 1) {
        throw std::invalid_argument("RDE sizes and counts must be positive");
    }
    if (!(ks_threshold > 0.0) || !(rho_tolerance > 0.0)) {
        throw std::invalid_argument("RDE thresholds must be positive");
    }
}

RDEPool initial_pool(const TypeDistribution& p, double t, std::size_t pool_size) {
    RDEPool out;
    for (int k : p.edge_sizes()) out.pools.emplace(k, std::vector<double>(pool_size, t));
    return out;
}

RDEPool rde_iterate(const SizeBiasedFamily& family, double t, const RDEPool& pools, std::uint64_t seed,
                    unsigned workers) {
    RDEPool next;
    next.iterations = pools.iterations + 1;
    struct Task {
        int k;
        std::size_t begin, end;
    };
    std::vector<Task> tasks;
    for (const auto& [k, pool] : pools.pools) {
        next.pools.emplace(k, std::vector<double>(pool.size()));
        for (std::size_t b = 0; b < pool.size(); b += kChunk) tasks.push_back({k, b, std::min(pool.size(), b + kChunk)});
    }
    auto run = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < tasks.size(); i += stride) {
            const Task& task = tasks[i];
            Rng rng = make_rng(derive_seed(seed, {static_cast<std::uint64_t>(task.k), task.begin}));
            const TypeDistribution& law = family.at(task.k);
            auto& out = next.pools.at(task.k);
            for (std::size_t j = task.begin; j < task.end; ++j) {
                out[j] = t - total_share(law.sample(rng), pools, rng);
            }
        }
    };
    if (workers <= 1 || tasks.size() <= 1) {
        run(0, 1);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w, workers);
        for (auto& th : threads) th.join();
    }
    return next;
}

RDEPool rde_iterate(const TypeDistribution& p, double t, const RDEPool& pools, std::uint64_t seed, unsigned workers) {
    return rde_iterate(SizeBiasedFamily(p), t, pools, seed, workers);
}

double ks_distance(const std::vector<double>& previous, const std::vector<double>& next, std::size_t quantiles) {
    std::vector<double> a = previous, b = next;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    auto cdf = [](const std::vector<double>& s, double x) {
        return static_cast<double>(std::upper_bound(s.begin(), s.end(), x) - s.begin()) / static_cast<double>(s.size());
    };
    double worst = 0.0;
    for (std::size_t q = 0; q < quantiles; ++q) {
        std::size_t idx = std::min(b.size() - 1, static_cast<std::size_t>((q + 0.5) * b.size() / quantiles));
        double x = b[idx];
        worst = std::max(worst, std::abs(cdf(a, x) - cdf(b, x)));
    }
    return worst;
}

std::pair<RDEPool, RDEDiagnostics> rde_solve(const TypeDistribution& p, double t, const RDEParams& params) {
    params.validate();
    SizeBiasedFamily family(p);
    RDEPool pools = initial_pool(p, t, params.pool_size);
    RDEDiagnostics diag;
    for (std::size_t it = 1; it <= params.max_iterations; ++it) {
        RDEPool next = rde_iterate(family, t, pools, derive_seed(params.seed, {0x5244ULL, it}), params.workers);
        double ks = 0.0;
        for (const auto& [k, pool] : next.pools) {
            ks = std::max(ks, ks_distance(pools.pools.at(k), pool, params.ks_quantiles));
        }
        pools = std::move(next);
        diag.ks_trajectory.push_back(ks);
        diag.iterations = it;
        if (ks <= params.ks_threshold) {
            diag.converged = true;
            break;
        }
    }
    return {std::move(pools), std::move(diag)};
}

MeanExcessEstimate mean_excess(const TypeDistribution& p, double t, const RDEPool& pools, std::size_t samples,
                               std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("mean_excess needs samples >= 1");
    Rng rng = make_rng(seed);
    const double m = static_cast<double>(samples);
    MeanExcessEstimate est;
    est.t = t;
    double variance = 0.0;
    for (const auto& [k, pool] : pools.pools) {
        std::size_t hits = 0;
        for (std::size_t s = 0; s < samples; ++s) {
            double sum = 0.0;
            for (int i = 0; i < k; ++i) sum += std::max(draw(pool, rng), 0.0);
            hits += sum < 1.0;
        }
        double prob = static_cast<double>(hits) / m;
        double weight = p.expected_count(k) / k;
        est.term1 += weight * prob;
        variance += weight * weight * prob * (1.0 - prob) / m;
    }
    std::size_t above = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        above += total_share(p.sample(rng), pools, rng) > t;
    }
    double q = static_cast<double>(above) / m;
    est.term2 = t * q;
    variance += t * t * q * (1.0 - q) / m;
    est.phi = est.term1 - est.term2;
    est.std_error = std::sqrt(variance);
    return est;
}

double rho_limit(const TypeDistribution& p, const RDEParams& params) {
    params.validate();
    auto positive = [&](double t) {
        auto [pools, diag] = rde_solve(p, t, params);
        MeanExcessEstimate est = mean_excess(p, t, pools, params.eval_samples, derive_seed(params.seed, {0x4d45ULL}));
        return est.phi > 3.0 * est.std_error;
    };
    double lo = 0.0;
    double hi = static_cast<double>(p.max_degree());
    if (hi == 0.0 || !positive(lo)) return 0.0;
    while (hi - lo > params.rho_tolerance) {
        double mid = 0.5 * (lo + hi);
        if (positive(mid)) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::string pools_csv(const RDEPool& pools) {
    std::string out = "k,value\n";
    char buf[64];
    for (const auto& [k, pool] : pools.pools) {
        for (double x : pool) {
            std::snprintf(buf, sizeof buf, "%d,%.17g\n", k, x);
            out += buf;
        }
    }
    return out;
}

nlohmann::json to_json(const MeanExcessEstimate& m) {
    return nlohmann::json{{"t", m.t}, {"phi", m.phi}, {"stderr", m.std_error}, {"term1", m.term1}, {"term2", m.term2}};
}

}  // namespace hb
