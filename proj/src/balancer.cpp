#include "hyperbalance/balancer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace hb {

Allocation Allocation::uniform(const Hypergraph& h) {
    Allocation a;
    a.theta.reserve(h.num_edges());
    for (const auto& edge : h.edges()) {
        a.theta.emplace_back(edge.size(), 1.0 / static_cast<double>(edge.size()));
    }
    return a;
}

void Allocation::validate(const Hypergraph& h, double tol) const {
    if (theta.size() != h.num_edges()) throw HypergraphError("allocation has wrong number of edges");
    for (EdgeIndex e = 0; e < theta.size(); ++e) {
        if (theta[e].size() != h.edge(e).size()) {
            throw HypergraphError("allocation row " + std::to_string(e) + " has wrong length");
        }
        double sum = 0.0;
        for (double x : theta[e]) {
            if (!(x >= 0.0)) throw HypergraphError("allocation entry is negative");
            sum += x;
        }
        if (std::abs(sum - 1.0) > tol) {
            throw HypergraphError("allocation row " + std::to_string(e) + " does not sum to one");
        }
    }
}

double LoadVector::max() const {
    return loads.empty() ? 0.0 : *std::max_element(loads.begin(), loads.end());
}

void SolveParams::validate() const {
    if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be nonnegative");
    if (!(damping > 0.0 && damping <= 1.0)) throw std::invalid_argument("damping must lie in (0, 1]");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
}

LoadVector loads(const Hypergraph& h, const Allocation& theta, const Baseload& b) {
    if (b.size() != h.num_vertices()) throw HypergraphError("baseload length does not match vertex count");
    theta.validate(h, 1e-6);
    LoadVector out{b.b};
    for (EdgeIndex e = 0; e < h.num_edges(); ++e) {
        auto edge = h.edge(e);
        for (std::size_t k = 0; k < edge.size(); ++k) out.loads[edge[k]] += theta.theta[e][k];
    }
    return out;
}

LoadVector loads(const Hypergraph& h, const Allocation& theta) {
    return loads(h, theta, Baseload::zeros(h.num_vertices()));
}

std::vector<double> water_fill(std::span<const double> r, double* level) {
    const std::size_t k = r.size();
    std::vector<double> sorted(r.begin(), r.end());
    std::sort(sorted.begin(), sorted.end());
    double prefix = 0.0;
    double lambda = 0.0;
    for (std::size_t m = 1; m <= k; ++m) {
        prefix += sorted[m - 1];
        lambda = (1.0 + prefix) / static_cast<double>(m);
        if (m == k || lambda <= sorted[m]) break;
    }
    std::vector<double> theta(k);
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        theta[i] = std::max(lambda - r[i], 0.0);
        sum += theta[i];
    }
    for (double& x : theta) x /= sum;
    if (level) *level = lambda;
    return theta;
}

namespace {

// Solves x + eps * log(x) = u for x > 0 by Newton iteration in y = log x.
// The map is convex and increasing in y, so starting right of the root the
// iterates decrease monotonically onto it.
double solve_log_shift(double u, double eps) {
    double y = u / eps;
    if (u >= 0.0) y = std::min(y, std::log1p(u));
    for (int it = 0; it < 200; ++it) {
        double ey = std::exp(y);
        double f = ey + eps * y - u;
        double step = f / (ey + eps);
        y -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(y))) break;
    }
    return std::exp(y);
}

double edge_sum(std::span<const double> r, double c, double eps, double* derivative) {
    double sum = 0.0, deriv = 0.0;
    for (double ri : r) {
        double x = solve_log_shift(c - ri, eps);
        sum += x;
        deriv += x / (x + eps);
    }
    if (derivative) *derivative = deriv;
    return sum;
}

}  // namespace

std::vector<double> softmax_fill(std::span<const double> r, double eps) {
    const std::size_t k = r.size();
    const double rmin = *std::min_element(r.begin(), r.end());
    // sum(c) is increasing; at hi the smallest residual alone receives 1, at lo
    // every vertex receives at most 1/k.
    double hi = rmin + 1.0;
    double lo = rmin + 1.0 / static_cast<double>(k) - eps * std::log(static_cast<double>(k));
    double c = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double deriv = 0.0;
        double g = edge_sum(r, c, eps, &deriv) - 1.0;
        if (g > 0.0) hi = c; else lo = c;
        double next = c - g / deriv;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - c) <= 1e-16 * std::max(1.0, std::abs(c)) || hi - lo <= 1e-16 * std::max(1.0, std::abs(c))) {
            c = next;
            break;
        }
        c = next;
    }
    std::vector<double> theta(k);
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        theta[i] = solve_log_shift(c - r[i], eps);
        sum += theta[i];
    }
    for (double& x : theta) x /= sum;
    return theta;
}

namespace {

template <typename EdgeUpdate>
SolveResult sweep_solver(const Hypergraph& h, const Baseload& b, const SolveParams& params,
                         std::optional<Allocation> init, EdgeUpdate&& update, const char* name) {
    params.validate();
    if (b.size() != h.num_vertices()) throw HypergraphError("baseload length does not match vertex count");
    SolveResult res;
    res.allocation = init ? std::move(*init) : Allocation::uniform(h);
    res.allocation.validate(h, 1e-9);
    res.loads = loads(h, res.allocation, b);

    const std::size_t m = h.num_edges();
    std::vector<double> previous;
    std::vector<double> residual;
    for (std::size_t sweep = 1; sweep <= params.max_iters; ++sweep) {
        previous = res.loads.loads;
        bool backward = params.order == SweepOrder::Alternating && sweep % 2 == 0;
        for (std::size_t idx = 0; idx < m; ++idx) {
            EdgeIndex e = static_cast<EdgeIndex>(backward ? m - 1 - idx : idx);
            auto edge = h.edge(e);
            auto& row = res.allocation.theta[e];
            residual.resize(edge.size());
            for (std::size_t k = 0; k < edge.size(); ++k) residual[k] = res.loads.loads[edge[k]] - row[k];
            std::vector<double> next = update(residual, row);
            for (std::size_t k = 0; k < edge.size(); ++k) {
                res.loads.loads[edge[k]] = residual[k] + next[k];
                row[k] = next[k];
            }
        }
        double delta = 0.0;
        for (std::size_t v = 0; v < previous.size(); ++v) {
            delta = std::max(delta, std::abs(res.loads.loads[v] - previous[v]));
        }
        res.sweeps = sweep;
        res.last_delta = delta;
        if (delta < params.tol) {
            // recompute from scratch to drop accumulated rounding in the running sums
            res.loads = loads(h, res.allocation, b);
            return res;
        }
    }
    throw ConvergenceError(std::string(name) + " did not converge: last sweep delta " +
                               std::to_string(res.last_delta),
                           res.last_delta, res.sweeps);
}

}  // namespace

Allocation rebalance_edge(const Allocation& theta, const Hypergraph& h, const Baseload& b, EdgeIndex e) {
    LoadVector current = loads(h, theta, b);
    auto edge = h.edge(e);
    std::vector<double> residual(edge.size());
    for (std::size_t k = 0; k < edge.size(); ++k) residual[k] = current[edge[k]] - theta.theta[e][k];
    Allocation out = theta;
    out.theta[e] = water_fill(residual);
    return out;
}

SolveResult balance(const Hypergraph& h, const Baseload& b, const SolveParams& params,
                    std::optional<Allocation> init) {
    return sweep_solver(
        h, b, params, std::move(init),
        [](std::span<const double> residual, const std::vector<double>&) { return water_fill(residual); },
        "balance");
}

SolveResult epsilon_balance(const Hypergraph& h, const Baseload& b, const SolveParams& params,
                            std::optional<Allocation> init) {
    if (!(params.epsilon > 0.0)) throw std::invalid_argument("epsilon_balance needs epsilon > 0");
    const double eps = params.epsilon;
    const double alpha = params.damping;
    return sweep_solver(
        h, b, params, std::move(init),
        [eps, alpha](std::span<const double> residual, const std::vector<double>& row) {
            std::vector<double> next = softmax_fill(residual, eps);
            if (alpha < 1.0) {
                for (std::size_t k = 0; k < next.size(); ++k) next[k] = (1.0 - alpha) * row[k] + alpha * next[k];
            }
            return next;
        },
        "epsilon_balance");
}

double epsilon_residual(const Hypergraph& h, const Allocation& theta, const Baseload& b, double eps) {
    LoadVector l = loads(h, theta, b);
    double worst = 0.0;
    for (EdgeIndex e = 0; e < h.num_edges(); ++e) {
        auto edge = h.edge(e);
        double lmin = std::numeric_limits<double>::infinity();
        for (Vertex v : edge) lmin = std::min(lmin, l[v]);
        double z = 0.0;
        for (Vertex v : edge) z += std::exp(-(l[v] - lmin) / eps);
        for (std::size_t k = 0; k < edge.size(); ++k) {
            double target = std::exp(-(l[edge[k]] - lmin) / eps) / z;
            worst = std::max(worst, std::abs(theta.theta[e][k] - target));
        }
    }
    return worst;
}

BalanceReport verify_balanced(const Hypergraph& h, const Allocation& theta, const Baseload& b, double tol) {
    LoadVector l = loads(h, theta, b);
    BalanceReport report;
    for (EdgeIndex e = 0; e < h.num_edges(); ++e) {
        auto edge = h.edge(e);
        std::size_t light = 0;
        for (std::size_t k = 1; k < edge.size(); ++k) {
            if (l[edge[k]] < l[edge[light]]) light = k;
        }
        for (std::size_t k = 0; k < edge.size(); ++k) {
            double v = theta.theta[e][k] * std::max(l[edge[k]] - l[edge[light]], 0.0);
            if (v > report.max_violation) {
                report.max_violation = v;
                report.edge = e;
                report.heavier = edge[k];
                report.lighter = edge[light];
            }
        }
    }
    report.passed = report.max_violation < tol;
    return report;
}

double mean_excess_finite(const LoadVector& l, double t) {
    if (l.size() == 0) return 0.0;
    double sum = 0.0;
    for (double x : l.loads) sum += std::max(x - t, 0.0);
    return sum / static_cast<double>(l.size());
}

double variational_gap(const Hypergraph& h, const LoadVector& l, double t, double tie_band) {
    const std::size_t n = h.num_vertices();
    if (n == 0) return 0.0;
    std::vector<char> f(n);
    double fsum = 0.0;
    for (Vertex v = 0; v < n; ++v) {
        f[v] = l[v] > t + tie_band;
        fsum += f[v];
    }
    double edges_inside = 0.0;
    for (const auto& edge : h.edges()) {
        if (std::all_of(edge.begin(), edge.end(), [&](Vertex v) { return f[v] != 0; })) edges_inside += 1.0;
    }
    double rhs = (edges_inside - t * fsum) / static_cast<double>(n);
    return mean_excess_finite(l, t) - rhs;
}

double response_epsilon(const Hypergraph& h, Vertex i, double t, double epsilon, const SolveParams& params) {
    if (i >= h.num_vertices()) throw HypergraphError("vertex out of range");
    Baseload b = Baseload::zeros(h.num_vertices());
    b.b[i] = t;
    SolveParams p = params;
    p.epsilon = epsilon;
    return epsilon_balance(h, b, p).loads[i];
}

nlohmann::json to_json(const Allocation& theta) { return nlohmann::json{{"theta", theta.theta}}; }

nlohmann::json to_json(const LoadVector& l) { return nlohmann::json{{"loads", l.loads}}; }

nlohmann::json to_json(const BalanceReport& r) {
    nlohmann::json j{{"max_violation", r.max_violation}, {"passed", r.passed}};
    if (r.edge) {
        j["witness"] = {{"edge", *r.edge}, {"heavier", *r.heavier}, {"lighter", *r.lighter}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Allocation allocation_from_json(const nlohmann::json& j) {
    return Allocation{j.at("theta").get<std::vector<std::vector<double>>>()};
}

}  // namespace hb
