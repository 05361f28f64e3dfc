#include "hyperbalance/lwc.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <unordered_map>

namespace hb {

double Census::total() const {
    double s = 0.0;
    for (const auto& [k, m] : mass) s += m;
    return s;
}

RootedHypergraph explore(const Hypergraph& h, Vertex root, int depth) {
    if (root >= h.num_vertices()) throw HypergraphError("root out of range");
    if (depth < 0) throw HypergraphError("depth must be nonnegative");
    std::unordered_map<Vertex, int> dist{{root, 0}};
    std::vector<Vertex> order{root};
    for (std::size_t head = 0; head < order.size(); ++head) {
        Vertex v = order[head];
        int dv = dist.at(v);
        if (dv == depth) continue;
        for (EdgeIndex e : h.incident(v)) {
            for (Vertex u : h.edge(e)) {
                if (dist.emplace(u, dv + 1).second) order.push_back(u);
            }
        }
    }
    RootedHypergraph out;
    out.graph = induced(h, order);
    out.root = 0;
    out.depth = depth;
    out.original = std::move(order);
    out.is_tree = is_hypertree(out.graph);
    return out;
}

namespace {

Census from_counts(const std::map<std::string, std::size_t>& counts, std::size_t total) {
    Census c;
    c.samples = total;
    for (const auto& [k, n] : counts) c.mass[k] = static_cast<double>(n) / static_cast<double>(total);
    return c;
}

}  // namespace

Census neighborhood_census(const Hypergraph& h, int depth) {
    std::map<std::string, std::size_t> counts;
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
        RootedHypergraph b = explore(h, v, depth);
        ++counts[b.is_tree ? canonical_code(b) : std::string(kNonTreeKey)];
    }
    return from_counts(counts, h.num_vertices());
}

Census ugwt_census(const TypeDistribution& p, int depth, std::size_t samples, std::uint64_t seed) {
    if (samples == 0) throw HypergraphError("census needs at least one sample");
    SizeBiasedFamily family(p);
    Rng rng = make_rng(seed);
    std::map<std::string, std::size_t> counts;
    for (std::size_t s = 0; s < samples; ++s) ++counts[canonical_code(sample_ugwt(family, depth, rng))];
    return from_counts(counts, samples);
}

double tv_distance(const Census& a, const Census& b) {
    std::set<std::string> keys;
    for (const auto& [k, m] : a.mass) keys.insert(k);
    for (const auto& [k, m] : b.mass) keys.insert(k);
    double s = 0.0;
    for (const auto& k : keys) s += std::abs(a.at(k) - b.at(k));
    return 0.5 * s;
}

std::string census_csv(const Census& c) {
    std::string out = "code,mass\n";
    char buf[64];
    for (const auto& [k, m] : c.mass) {
        std::snprintf(buf, sizeof buf, "%.17g", m);
        out += k + "," + buf + "\n";
    }
    return out;
}

}  // namespace hb
