// Random instance generators shared by the unit tests and the acceptance run.
#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "hyperbalance/balancer.hpp"
#include "hyperbalance/genmodel.hpp"
#include "hyperbalance/hypergraph.hpp"
#include "hyperbalance/rng.hpp"

namespace hbtest {

using namespace hb;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) { return lo + uniform_index(rng, hi - lo + 1); }

// Simple hypergraph on n vertices with m distinct edges of sizes in [kmin, kmax].
inline Hypergraph random_hypergraph(Rng& rng, std::size_t n, std::size_t m, std::size_t kmin = 2,
                                    std::size_t kmax = 4) {
    kmax = std::min(kmax, n);
    std::set<std::vector<Vertex>> seen;
    std::vector<std::vector<Vertex>> edges;
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t tries = 0; edges.size() < m && tries < 50 * m + 50; ++tries) {
        std::size_t k = pick(rng, kmin, kmax);
        for (std::size_t i = 0; i < k; ++i) std::swap(all[i], all[i + uniform_index(rng, n - i)]);
        std::vector<Vertex> e(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
        std::vector<Vertex> key = e;
        std::sort(key.begin(), key.end());
        if (seen.insert(key).second) edges.push_back(std::move(e));
    }
    return Hypergraph(n, std::move(edges));
}

inline Hypergraph random_hypergraph(Rng& rng, std::size_t max_n) {
    std::size_t n = pick(rng, 4, max_n);
    std::size_t m = pick(rng, 1, 2 * n);
    return random_hypergraph(rng, n, m);
}

// Random hypertree: edges hang off existing vertices with fresh endpoints,
// then vertex labels are shuffled.
inline Hypergraph random_hypertree(Rng& rng, std::size_t max_vertices, std::size_t kmax = 4) {
    std::vector<std::vector<Vertex>> edges;
    std::size_t n = 1;
    std::size_t target = pick(rng, 1, max_vertices);
    while (true) {
        std::size_t k = pick(rng, 2, kmax);
        if (n + k - 1 > target) break;
        std::vector<Vertex> e{static_cast<Vertex>(uniform_index(rng, n))};
        for (std::size_t j = 1; j < k; ++j) e.push_back(static_cast<Vertex>(n++));
        edges.push_back(std::move(e));
    }
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_index(rng, i)]);
    for (auto& e : edges) {
        for (auto& v : e) v = perm[v];
    }
    return Hypergraph(n, std::move(edges));
}

// Random valid allocation with Dirichlet(1) rows.
inline Allocation random_allocation(Rng& rng, const Hypergraph& h) {
    Allocation a;
    for (const auto& e : h.edges()) {
        std::vector<double> row(e.size());
        double s = 0.0;
        for (double& x : row) {
            x = -std::log(1.0 - uniform01(rng));
            s += x;
        }
        for (double& x : row) x /= s;
        a.theta.push_back(std::move(row));
    }
    return a;
}

inline Baseload random_baseload(Rng& rng, std::size_t n, double scale = 1.0) {
    Baseload b = Baseload::zeros(n);
    for (double& x : b.b) x = scale * uniform01(rng);
    return b;
}

inline double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

inline TypeVector tv(std::map<int, int> c) { return TypeVector(std::move(c)); }

// 1/2 delta(e2) + 1/2 delta(e2 + e3).
inline TypeDistribution acceptance_distribution() {
    return TypeDistribution({{tv({{2, 1}}), 0.5}, {tv({{2, 1}, {3, 1}}), 0.5}});
}

}  // namespace hbtest
