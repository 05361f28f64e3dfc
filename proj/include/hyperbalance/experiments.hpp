// experiments.hpp - seeded replication drivers shared by the CLI and the
// acceptance suite.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperbalance/balancer.hpp"
#include "hyperbalance/genmodel.hpp"
#include "hyperbalance/lwc.hpp"
#include "hyperbalance/rde.hpp"

namespace hb {

// Erased configuration-model draw with i.i.d. types: H^e_n.
Hypergraph sample_erased_config(const TypeDistribution& p, std::size_t n, std::uint64_t seed);

struct LwcRow {
    std::size_t n = 0;
    std::size_t rep = 0;
    double tv = 0.0;
    double non_tree = 0.0;
};

struct LwcExperiment {
    Census reference;
    std::vector<LwcRow> rows;
};

struct LwcConfig {
    std::vector<std::size_t> n_grid{200, 800, 3200};
    int depth = 2;
    std::size_t reps = 10;
    std::size_t reference_samples = 100'000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

// Rows are ordered by (n, rep) and each replicate draws from its own derived
// seed, so results do not depend on the worker count.
LwcExperiment run_lwc_experiment(const TypeDistribution& p, const LwcConfig& config);

struct MaxloadRow {
    std::size_t n = 0;
    std::size_t rep = 0;
    std::size_t edges = 0;
    double rho_balance = 0.0;
    double rho_flow = 0.0;
    std::vector<double> phi;  // mean excess of the balanced loads at each requested t
};

struct MaxloadConfig {
    std::vector<std::size_t> n_grid{200, 800, 3200};
    std::size_t reps = 10;
    std::vector<double> phi_t;
    SolveParams solve;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

std::vector<MaxloadRow> run_maxload_experiment(const TypeDistribution& p, const MaxloadConfig& config);

// Limit-side mean excess (population dynamics at each t) next to the mean
// excess of the balanced finite graphs of size n from `rows`, whose phi
// entries must line up with `t_values`.
struct PhiComparison {
    double t = 0.0;
    double phi_limit = 0.0;
    double limit_stderr = 0.0;
    double phi_finite = 0.0;    // mean over replicates
    double finite_stderr = 0.0; // sample standard deviation / sqrt(reps)
    double sigma() const;       // combined standard error
    double excess() const { return phi_limit - phi_finite; }
};

std::vector<PhiComparison> compare_phi(const TypeDistribution& p, const std::vector<MaxloadRow>& rows, std::size_t n,
                                       const std::vector<double>& t_values, const RDEParams& params);

double median(std::vector<double> values);

}  // namespace hb
