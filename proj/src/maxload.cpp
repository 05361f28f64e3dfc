#include "hyperbalance/maxload.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <limits>
#include <numeric>
#include <queue>

namespace hb {

Rational::Rational(std::int64_t p, std::int64_t q) : num(p), den(q) {
    if (q <= 0) throw std::invalid_argument("rational denominator must be positive");
    std::int64_t g = std::gcd(p, q);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num == 0) den = 1;
}

std::size_t edges_within(const Hypergraph& h, const std::vector<Vertex>& set) {
    std::vector<char> in(h.num_vertices(), 0);
    for (Vertex v : set) in[v] = 1;
    std::size_t count = 0;
    for (const auto& edge : h.edges()) {
        if (std::all_of(edge.begin(), edge.end(), [&](Vertex v) { return in[v] != 0; })) ++count;
    }
    return count;
}

namespace {

DensityResult make_result(std::vector<Vertex> set, std::size_t inside) {
    std::sort(set.begin(), set.end());
    DensityResult r;
    r.density = Rational(static_cast<std::int64_t>(inside), static_cast<std::int64_t>(set.size()));
    r.rho = r.density.value();
    r.best_set = std::move(set);
    return r;
}

// smaller set first, then lexicographic
bool preferred(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

class MaxFlow {
public:
    static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

    explicit MaxFlow(std::size_t nodes) : adj_(nodes), level_(nodes), iter_(nodes) {}

    void add_arc(std::size_t from, std::size_t to, std::int64_t cap) {
        adj_[from].push_back(arcs_.size());
        arcs_.push_back({to, cap});
        adj_[to].push_back(arcs_.size());
        arcs_.push_back({from, 0});
    }

    std::int64_t run(std::size_t s, std::size_t t) {
        std::int64_t flow = 0;
        while (bfs(s, t)) {
            std::fill(iter_.begin(), iter_.end(), 0);
            while (std::int64_t pushed = dfs(s, t, kInf)) flow += pushed;
        }
        return flow;
    }

    // Nodes reachable from s in the residual network.
    std::vector<char> source_side(std::size_t s) const {
        std::vector<char> seen(adj_.size(), 0);
        std::vector<std::size_t> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t a : adj_[u]) {
                if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
                    seen[arcs_[a].to] = 1;
                    stack.push_back(arcs_[a].to);
                }
            }
        }
        return seen;
    }

    // Nodes that can still reach t in the residual network.
    std::vector<char> sink_side(std::size_t t) const {
        std::vector<char> seen(adj_.size(), 0);
        std::vector<std::size_t> stack{t};
        seen[t] = 1;
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t a : adj_[u]) {
                // arc a goes u -> w; its twin w -> u has residual arcs_[a ^ 1].cap
                std::size_t w = arcs_[a].to;
                if (arcs_[a ^ 1].cap > 0 && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        return seen;
    }

private:
    struct Arc {
        std::size_t to;
        std::int64_t cap;
    };

    bool bfs(std::size_t s, std::size_t t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<std::size_t> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            std::size_t u = q.front();
            q.pop();
            for (std::size_t a : adj_[u]) {
                if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
                    level_[arcs_[a].to] = level_[u] + 1;
                    q.push(arcs_[a].to);
                }
            }
        }
        return level_[t] >= 0;
    }

    std::int64_t dfs(std::size_t u, std::size_t t, std::int64_t limit) {
        if (u == t) return limit;
        for (std::size_t& i = iter_[u]; i < adj_[u].size(); ++i) {
            std::size_t a = adj_[u][i];
            std::size_t w = arcs_[a].to;
            if (arcs_[a].cap > 0 && level_[w] == level_[u] + 1) {
                std::int64_t pushed = dfs(w, t, std::min(limit, arcs_[a].cap));
                if (pushed > 0) {
                    arcs_[a].cap -= pushed;
                    arcs_[a ^ 1].cap += pushed;
                    return pushed;
                }
            }
        }
        return 0;
    }

    std::vector<std::vector<std::size_t>> adj_;
    std::vector<Arc> arcs_;
    std::vector<int> level_;
    std::vector<std::size_t> iter_;
};

struct CutOutcome {
    std::int64_t surplus;  // max over closures S of q|E(S)| - p|S|
    std::vector<Vertex> minimal_set;
    std::vector<Vertex> maximal_set;
};

// Node layout: 0 source, 1 sink, 2..2+m edge nodes, then vertex nodes.
CutOutcome closure_cut(const Hypergraph& h, const Rational& d, std::optional<Vertex> forced) {
    const std::size_t m = h.num_edges(), n = h.num_vertices();
    const std::size_t s = 0, t = 1, ebase = 2, vbase = 2 + m;
    MaxFlow net(2 + m + n);
    for (EdgeIndex e = 0; e < m; ++e) {
        net.add_arc(s, ebase + e, d.den);
        for (Vertex v : h.edge(e)) net.add_arc(ebase + e, vbase + v, MaxFlow::kInf);
    }
    for (Vertex v = 0; v < n; ++v) net.add_arc(vbase + v, t, d.num);
    if (forced) net.add_arc(s, vbase + *forced, MaxFlow::kInf);
    std::int64_t flow = net.run(s, t);
    CutOutcome out;
    out.surplus = static_cast<std::int64_t>(m) * d.den - flow;
    auto src = net.source_side(s);
    auto snk = net.sink_side(t);
    for (Vertex v = 0; v < n; ++v) {
        if (src[vbase + v]) out.minimal_set.push_back(v);
        if (!snk[vbase + v]) out.maximal_set.push_back(v);
    }
    return out;
}

}  // namespace

DensityResult max_density_bruteforce(const Hypergraph& h) {
    const std::size_t n = h.num_vertices();
    if (n == 0) throw HypergraphError("max density needs at least one vertex");
    if (n > 22) throw HypergraphError("brute-force density search limited to n <= 22");

    std::vector<std::uint32_t> masks;
    for (const auto& edge : h.edges()) {
        std::uint32_t mask = 0;
        for (Vertex v : edge) mask |= 1u << v;
        masks.push_back(mask);
    }
    std::uint32_t best_mask = 1;
    std::int64_t best_edges = 0, best_size = 1;
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
        std::int64_t inside = 0;
        for (std::uint32_t mask : masks) inside += (mask & s) == mask;
        std::int64_t size = std::popcount(s);
        __int128 lhs = static_cast<__int128>(inside) * best_size;
        __int128 rhs = static_cast<__int128>(best_edges) * size;
        bool take = lhs > rhs;
        if (lhs == rhs && size <= best_size) {
            if (size < best_size) {
                take = true;
            } else {
                // same size: lexicographic order of the sorted member lists
                std::uint32_t diff = s ^ best_mask;
                std::uint32_t low = diff & (~diff + 1);
                take = (s & low) != 0;
            }
        }
        if (take) {
            best_mask = s;
            best_edges = inside;
            best_size = size;
        }
    }
    std::vector<Vertex> set;
    for (Vertex v = 0; v < n; ++v) {
        if (best_mask >> v & 1u) set.push_back(v);
    }
    return make_result(std::move(set), static_cast<std::size_t>(best_edges));
}

DensityResult max_density_flow(const Hypergraph& h, bool canonical_set) {
    const std::size_t n = h.num_vertices();
    if (n == 0) throw HypergraphError("max density needs at least one vertex");
    if (h.num_edges() == 0) return make_result({0}, 0);

    std::vector<Vertex> current(n);
    std::iota(current.begin(), current.end(), Vertex{0});
    Rational d(static_cast<std::int64_t>(h.num_edges()), static_cast<std::int64_t>(n));
    // Each improving cut strictly raises the density; at most n*m distinct values exist.
    while (true) {
        CutOutcome cut = closure_cut(h, d, std::nullopt);
        if (cut.surplus <= 0) break;
        current = std::move(cut.minimal_set);
        d = Rational(static_cast<std::int64_t>(edges_within(h, current)), static_cast<std::int64_t>(current.size()));
    }
    if (!canonical_set) return make_result(std::move(current), edges_within(h, current));

    // Optimal sets are the zero-surplus closures at d. The smallest one
    // containing v is the residual source side with v forced in, and every
    // smallest optimal set arises this way for some v in the maximal one.
    CutOutcome base = closure_cut(h, d, std::nullopt);
    std::vector<Vertex> best;
    for (Vertex v : base.maximal_set) {
        CutOutcome forced = closure_cut(h, d, v);
        if (forced.surplus != 0 || forced.minimal_set.empty()) continue;
        if (best.empty() || preferred(forced.minimal_set, best)) best = std::move(forced.minimal_set);
    }
    if (best.empty()) best = std::move(current);
    return make_result(std::move(best), edges_within(h, best));
}

double rho_finite(const Hypergraph& h, const SolveParams& params) {
    SolveParams p = params;
    p.epsilon = 0.0;
    return balance(h, Baseload::zeros(h.num_vertices()), p).loads.max();
}

nlohmann::json to_json(const DensityResult& r) {
    return nlohmann::json{{"rho", r.rho}, {"density", r.density.str()}, {"set", r.best_set}};
}

}  // namespace hb
