#include "hyperbalance/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>

namespace hb {

Hypergraph::Hypergraph(std::size_t n, std::vector<std::vector<Vertex>> edges)
    : n_(n), edges_(std::move(edges)), incidence_(n) {
    std::set<std::vector<Vertex>> seen;
    for (EdgeIndex e = 0; e < edges_.size(); ++e) {
        const auto& edge = edges_[e];
        if (edge.size() < 2) {
            throw HypergraphError("edge " + std::to_string(e) + " has fewer than two vertices");
        }
        std::vector<Vertex> sorted = edge;
        std::sort(sorted.begin(), sorted.end());
        if (sorted.back() >= n_) {
            throw HypergraphError("edge " + std::to_string(e) + " references vertex " +
                                  std::to_string(sorted.back()) + " >= n");
        }
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw HypergraphError("edge " + std::to_string(e) + " repeats a vertex");
        }
        if (!seen.insert(std::move(sorted)).second) {
            throw HypergraphError("edge " + std::to_string(e) + " duplicates an earlier edge");
        }
        for (Vertex v : edge) incidence_[v].push_back(e);
        num_pairs_ += edge.size();
    }
}

std::size_t Hypergraph::position(EdgeIndex e, Vertex v) const {
    const auto& edge = edges_[e];
    auto it = std::find(edge.begin(), edge.end(), v);
    return it == edge.end() ? npos : static_cast<std::size_t>(it - edge.begin());
}

void MultiHypergraph::validate() const {
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].size() < 2) {
            throw HypergraphError("edge " + std::to_string(e) + " has fewer than two vertices");
        }
        for (Vertex v : edges[e]) {
            if (v >= n) throw HypergraphError("edge " + std::to_string(e) + " references vertex >= n");
        }
    }
}

namespace {

std::vector<std::vector<Vertex>> edges_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
        throw HypergraphError("hypergraph JSON needs \"n\" and \"edges\"");
    }
    if (!j.at("n").is_number_integer() || j.at("n").get<long long>() < 0) {
        throw HypergraphError("\"n\" must be a nonnegative integer");
    }
    std::vector<std::vector<Vertex>> edges;
    for (const auto& je : j.at("edges")) {
        std::vector<Vertex> edge;
        for (const auto& jv : je) {
            if (!jv.is_number_integer() || jv.get<long long>() < 0) {
                throw HypergraphError("vertex indices must be nonnegative integers");
            }
            edge.push_back(jv.get<Vertex>());
        }
        edges.push_back(std::move(edge));
    }
    return edges;
}

nlohmann::json parse_json(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw HypergraphError(std::string("malformed JSON: ") + err.what());
    }
}

}  // namespace

Hypergraph hypergraph_from_json(const nlohmann::json& j) {
    auto edges = edges_from_json(j);
    return Hypergraph(j.at("n").get<std::size_t>(), std::move(edges));
}

Hypergraph parse_hypergraph(const std::string& text) {
    return hypergraph_from_json(parse_json(text));
}

nlohmann::json to_json(const Hypergraph& h) {
    return nlohmann::json{{"n", h.num_vertices()}, {"edges", h.edges()}};
}

MultiHypergraph multihypergraph_from_json(const nlohmann::json& j) {
    MultiHypergraph m{j.at("n").get<std::size_t>(), edges_from_json(j)};
    m.validate();
    return m;
}

MultiHypergraph parse_multihypergraph(const std::string& text) {
    return multihypergraph_from_json(parse_json(text));
}

nlohmann::json to_json(const MultiHypergraph& h) {
    return nlohmann::json{{"n", h.n}, {"edges", h.edges}, {"multi", true}};
}

Baseload parse_baseload(const std::string& text, std::size_t n) {
    auto j = parse_json(text);
    if (!j.is_object() || !j.contains("b")) throw HypergraphError("baseload JSON needs \"b\"");
    Baseload b{j.at("b").get<std::vector<double>>()};
    if (b.size() != n) throw HypergraphError("baseload length does not match vertex count");
    for (double x : b.b) {
        if (!std::isfinite(x)) throw HypergraphError("baseload values must be finite");
    }
    return b;
}

nlohmann::json to_json(const Baseload& b) { return nlohmann::json{{"b", b.b}}; }

std::size_t degree(const Hypergraph& h, Vertex v) { return h.degree(v); }

bool is_hypertree(const Hypergraph& h) {
    // union-find over n vertex nodes followed by m edge nodes
    std::vector<std::size_t> parent(h.num_vertices() + h.num_edges());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (EdgeIndex e = 0; e < h.num_edges(); ++e) {
        std::size_t enode = h.num_vertices() + e;
        for (Vertex v : h.edge(e)) {
            std::size_t a = find(v), b = find(enode);
            if (a == b) return false;
            parent[a] = b;
        }
    }
    return true;
}

Hypergraph induced(const Hypergraph& h, std::span<const Vertex> vertices) {
    std::unordered_map<Vertex, Vertex> local;
    local.reserve(vertices.size() * 2);
    for (std::size_t k = 0; k < vertices.size(); ++k) local.emplace(vertices[k], static_cast<Vertex>(k));

    std::vector<EdgeIndex> candidates;
    for (Vertex v : vertices) {
        for (EdgeIndex e : h.incident(v)) candidates.push_back(e);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<std::vector<Vertex>> edges;
    for (EdgeIndex e : candidates) {
        std::vector<Vertex> mapped;
        mapped.reserve(h.edge(e).size());
        for (Vertex v : h.edge(e)) {
            auto it = local.find(v);
            if (it == local.end()) break;
            mapped.push_back(it->second);
        }
        if (mapped.size() == h.edge(e).size()) edges.push_back(std::move(mapped));
    }
    return Hypergraph(vertices.size(), std::move(edges));
}

RootedHypergraph ball(const Hypergraph& h, Vertex root, int d) {
    if (root >= h.num_vertices()) throw HypergraphError("root out of range");
    if (d < 0) throw HypergraphError("depth must be nonnegative");

    std::vector<int> dist(h.num_vertices(), -1);
    std::vector<Vertex> order{root};
    dist[root] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
        Vertex v = order[head];
        if (dist[v] == d) continue;
        for (EdgeIndex e : h.incident(v)) {
            for (Vertex u : h.edge(e)) {
                if (dist[u] < 0) {
                    dist[u] = dist[v] + 1;
                    order.push_back(u);
                }
            }
        }
    }

    RootedHypergraph out;
    out.graph = induced(h, order);
    out.root = 0;
    out.depth = d;
    out.original = std::move(order);
    out.is_tree = is_hypertree(out.graph);
    return out;
}

Hypergraph truncate(const Hypergraph& h, std::size_t delta) {
    std::vector<std::vector<Vertex>> kept;
    for (const auto& edge : h.edges()) {
        if (edge.size() > delta) continue;
        bool ok = std::all_of(edge.begin(), edge.end(), [&](Vertex v) { return h.degree(v) <= delta; });
        if (ok) kept.push_back(edge);
    }
    return Hypergraph(h.num_vertices(), std::move(kept));
}

namespace {

void append_prefixed(std::string& out, const std::string& code) {
    out += std::to_string(code.size());
    out += ':';
    out += code;
}

std::string vertex_code(const Hypergraph& t, Vertex v, std::size_t parent_edge);

// An edge reached from `from` is encoded by the multiset of its other endpoints.
std::string edge_code(const Hypergraph& t, EdgeIndex e, Vertex from) {
    std::vector<std::string> children;
    for (Vertex u : t.edge(e)) {
        if (u != from) children.push_back(vertex_code(t, u, e));
    }
    std::sort(children.begin(), children.end());
    std::string out = "e";
    for (const auto& c : children) append_prefixed(out, c);
    return out;
}

std::string vertex_code(const Hypergraph& t, Vertex v, std::size_t parent_edge) {
    std::vector<std::string> children;
    for (EdgeIndex e : t.incident(v)) {
        if (e != parent_edge) children.push_back(edge_code(t, e, v));
    }
    std::sort(children.begin(), children.end());
    std::string out = "v";
    for (const auto& c : children) append_prefixed(out, c);
    return out;
}

}  // namespace

std::string canonical_code(const Hypergraph& tree, Vertex root) {
    if (root >= tree.num_vertices()) throw HypergraphError("root out of range");
    if (!is_hypertree(tree)) throw HypergraphError("canonical_code requires a hypertree");
    return vertex_code(tree, root, Hypergraph::npos);
}

std::string canonical_code(const RootedHypergraph& tree) { return canonical_code(tree.graph, tree.root); }

}  // namespace hb
