#include "hyperbalance/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "hyperbalance/maxload.hpp"
#include "hyperbalance/rng.hpp"

namespace hb {

namespace {

// Runs body(i) for i in [0, count) on up to `workers` threads.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) body(i);
        });
    }
    for (auto& th : threads) th.join();
}

}  // namespace

Hypergraph sample_erased_config(const TypeDistribution& p, std::size_t n, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    TypeSequence seq = draw_type_sequence(p, n, rng);
    return erase(sample_config(seq, rng));
}

LwcExperiment run_lwc_experiment(const TypeDistribution& p, const LwcConfig& config) {
    LwcExperiment out;
    out.reference = ugwt_census(p, config.depth, config.reference_samples, derive_seed(config.seed, {0x7265ULL}));
    for (std::size_t n : config.n_grid) {
        for (std::size_t r = 0; r < config.reps; ++r) out.rows.push_back({n, r, 0.0, 0.0});
    }
    parallel_for(out.rows.size(), config.workers, [&](std::size_t i) {
        LwcRow& row = out.rows[i];
        Hypergraph h = sample_erased_config(p, row.n, derive_seed(config.seed, {row.n, row.rep}));
        Census c = neighborhood_census(h, config.depth);
        row.tv = tv_distance(c, out.reference);
        row.non_tree = c.at(kNonTreeKey);
    });
    return out;
}

std::vector<MaxloadRow> run_maxload_experiment(const TypeDistribution& p, const MaxloadConfig& config) {
    std::vector<MaxloadRow> rows;
    for (std::size_t n : config.n_grid) {
        for (std::size_t r = 0; r < config.reps; ++r) rows.push_back({n, r, 0, 0.0, 0.0, {}});
    }
    std::vector<std::exception_ptr> errors(rows.size());
    parallel_for(rows.size(), config.workers, [&](std::size_t i) {
        MaxloadRow& row = rows[i];
        Hypergraph h = sample_erased_config(p, row.n, derive_seed(config.seed, {row.n, row.rep}));
        row.edges = h.num_edges();
        try {
            SolveResult res = balance(h, Baseload::zeros(h.num_vertices()), config.solve);
            row.rho_balance = res.loads.max();
            for (double t : config.phi_t) row.phi.push_back(mean_excess_finite(res.loads, t));
        } catch (...) {
            errors[i] = std::current_exception();
        }
        row.rho_flow = max_density_flow(h, false).rho;
    });
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return rows;
}

double PhiComparison::sigma() const { return std::hypot(limit_stderr, finite_stderr); }

std::vector<PhiComparison> compare_phi(const TypeDistribution& p, const std::vector<MaxloadRow>& rows, std::size_t n,
                                       const std::vector<double>& t_values, const RDEParams& params) {
    std::vector<PhiComparison> out;
    for (std::size_t j = 0; j < t_values.size(); ++j) {
        PhiComparison c;
        c.t = t_values[j];
        auto [pools, diag] = rde_solve(p, c.t, params);
        MeanExcessEstimate est = mean_excess(p, c.t, pools, params.eval_samples, derive_seed(params.seed, {0x4d45ULL}));
        c.phi_limit = est.phi;
        c.limit_stderr = est.std_error;
        std::vector<double> finite;
        for (const auto& row : rows) {
            if (row.n != n) continue;
            if (row.phi.size() != t_values.size()) throw std::invalid_argument("rows carry a different t grid");
            finite.push_back(row.phi[j]);
        }
        if (finite.empty()) throw std::invalid_argument("no replicates at the requested n");
        double mean = 0.0;
        for (double x : finite) mean += x;
        mean /= static_cast<double>(finite.size());
        double var = 0.0;
        for (double x : finite) var += (x - mean) * (x - mean);
        if (finite.size() > 1) var /= static_cast<double>(finite.size() - 1);
        c.phi_finite = mean;
        c.finite_stderr = std::sqrt(var / static_cast<double>(finite.size()));
        out.push_back(c);
    }
    return out;
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of an empty set");
    std::sort(values.begin(), values.end());
    std::size_t mid = values.size() / 2;
    return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace hb
