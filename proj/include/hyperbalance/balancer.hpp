// balancer.hpp - allocations, exact and epsilon-balanced solvers, and the
// finite identities checked on their outputs.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "hyperbalance/hypergraph.hpp"

namespace hb {

// theta[e][k] is the share of edge e given to its k-th vertex.
struct Allocation {
    std::vector<std::vector<double>> theta;

    static Allocation uniform(const Hypergraph& h);
    // Throws HypergraphError if the shape does not match h, an entry is
    // negative, or a row does not sum to one within tol.
    void validate(const Hypergraph& h, double tol = 1e-12) const;
};

struct LoadVector {
    std::vector<double> loads;

    double operator[](Vertex v) const { return loads[v]; }
    std::size_t size() const { return loads.size(); }
    double max() const;
};

enum class SweepOrder { Forward, Alternating };

struct SolveParams {
    double epsilon = 0.0;       // 0 selects exact balancing
    double damping = 0.5;       // relaxation of each epsilon edge update, in (0, 1]
    double tol = 1e-10;         // sup-norm change of the load vector per sweep
    std::size_t max_iters = 1'000'000;
    SweepOrder order = SweepOrder::Forward;

    void validate() const;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual, std::size_t iterations)
        : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
    double residual() const { return residual_; }
    std::size_t iterations() const { return iterations_; }

private:
    double residual_;
    std::size_t iterations_;
};

struct SolveResult {
    Allocation allocation;
    LoadVector loads;
    std::size_t sweeps = 0;
    double last_delta = 0.0;
};

LoadVector loads(const Hypergraph& h, const Allocation& theta, const Baseload& b);
LoadVector loads(const Hypergraph& h, const Allocation& theta);

// Water-filling on one edge: theta_i = (lambda - r_i)^+ with
// sum_i (lambda - r_i)^+ = 1. Exact via sorted breakpoints.
std::vector<double> water_fill(std::span<const double> residual_loads, double* level = nullptr);

// Redistributes edge e so that the loads on e are balanced given all other edges.
Allocation rebalance_edge(const Allocation& theta, const Hypergraph& h, const Baseload& b, EdgeIndex e);

// Exact balanced allocation by round-robin water-filling sweeps. Throws
// ConvergenceError when the per-sweep load change stays above tol.
SolveResult balance(const Hypergraph& h, const Baseload& b, const SolveParams& params,
                    std::optional<Allocation> init = std::nullopt);

// Per-edge solution of theta_i = exp(-(r_i + theta_i)/eps) / Z. Returns the
// exact block minimizer of 1/2 sum load^2 + eps sum theta log theta.
std::vector<double> softmax_fill(std::span<const double> residual_loads, double epsilon);

// Epsilon-balanced allocation by Gauss-Seidel edge updates.
SolveResult epsilon_balance(const Hypergraph& h, const Baseload& b, const SolveParams& params,
                            std::optional<Allocation> init = std::nullopt);

// max over edges e and pairs i != j in e of |theta(e,i) - softmax_i|.
double epsilon_residual(const Hypergraph& h, const Allocation& theta, const Baseload& b, double epsilon);

struct BalanceReport {
    double max_violation = 0.0;
    std::optional<EdgeIndex> edge;
    std::optional<Vertex> heavier;
    std::optional<Vertex> lighter;
    bool passed = true;
};

// max over e and i, j in e of theta(e,i) * (load_i - load_j)^+.
BalanceReport verify_balanced(const Hypergraph& h, const Allocation& theta, const Baseload& b, double tol);

// (1/n) sum_i (load_i - t)^+.
double mean_excess_finite(const LoadVector& loads, double t);

// mean_excess_finite minus the value of the threshold test function
// f = 1{load > t + tie_band} in the variational formula (zero baseload).
double variational_gap(const Hypergraph& h, const LoadVector& loads, double t, double tie_band = 1e-8);

// Load at i of the epsilon-balanced allocation with baseload t at i, zero elsewhere.
double response_epsilon(const Hypergraph& h, Vertex i, double t, double epsilon, const SolveParams& params);

nlohmann::json to_json(const Allocation& theta);
nlohmann::json to_json(const LoadVector& loads);
nlohmann::json to_json(const BalanceReport& report);
Allocation allocation_from_json(const nlohmann::json& j);

}  // namespace hb
