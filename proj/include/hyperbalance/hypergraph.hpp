// hypergraph.hpp - finite hypergraphs, neighborhoods, hypertree tests and
// canonical codes for rooted hypertrees.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace hb {

using Vertex = std::uint32_t;
using EdgeIndex = std::uint32_t;

class HypergraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Simple hypergraph on vertices 0..n-1. Every edge has at least two distinct
// vertices and no two edges share the same vertex set. The vertex order inside
// an edge is kept as given; allocations are indexed by that order.
class Hypergraph {
public:
    Hypergraph() = default;
    // Throws HypergraphError when the simplicity invariants are violated.
    Hypergraph(std::size_t n, std::vector<std::vector<Vertex>> edges);

    std::size_t num_vertices() const { return n_; }
    std::size_t num_edges() const { return edges_.size(); }

    std::span<const Vertex> edge(EdgeIndex e) const { return edges_[e]; }
    const std::vector<std::vector<Vertex>>& edges() const { return edges_; }

    // Edges containing v, in increasing edge index.
    std::span<const EdgeIndex> incident(Vertex v) const { return incidence_[v]; }
    std::size_t degree(Vertex v) const { return incidence_[v].size(); }

    // Position of v inside edge e, or npos.
    std::size_t position(EdgeIndex e, Vertex v) const;

    // Sum of |e| over all edges.
    std::size_t num_pairs() const { return num_pairs_; }

    bool operator==(const Hypergraph& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::size_t n_ = 0;
    std::vector<std::vector<Vertex>> edges_;
    std::vector<std::vector<EdgeIndex>> incidence_;
    std::size_t num_pairs_ = 0;
};

// Edges are multisets; repeated vertices and repeated edges are allowed.
struct MultiHypergraph {
    std::size_t n = 0;
    std::vector<std::vector<Vertex>> edges;

    void validate() const;
};

// Per-vertex exogenous load.
struct Baseload {
    std::vector<double> b;

    static Baseload zeros(std::size_t n) { return Baseload{std::vector<double>(n, 0.0)}; }
    double operator[](Vertex v) const { return b[v]; }
    std::size_t size() const { return b.size(); }
};

// Vertex rooted hypergraph restricted to a ball. Vertices are re-indexed in
// breadth-first discovery order so the root is always vertex 0; original[k]
// maps the local index k back to the source hypergraph.
struct RootedHypergraph {
    Hypergraph graph;
    Vertex root = 0;
    int depth = 0;
    std::vector<Vertex> original;
    bool is_tree = true;
};

// JSON codecs. Formats:
//   {"n": 3, "edges": [[0,1],[1,2]]}
//   {"n": 3, "edges": [[0,0,1]], "multi": true}
//   {"b": [0.0, 1.5]}
Hypergraph parse_hypergraph(const std::string& text);
Hypergraph hypergraph_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Hypergraph& h);

MultiHypergraph parse_multihypergraph(const std::string& text);
MultiHypergraph multihypergraph_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MultiHypergraph& h);

Baseload parse_baseload(const std::string& text, std::size_t n);
nlohmann::json to_json(const Baseload& b);

std::size_t degree(const Hypergraph& h, Vertex v);

// Berge acyclicity, checked as acyclicity of the vertex-edge incidence graph.
bool is_hypertree(const Hypergraph& h);

// Induced sub-hypergraph on all vertices within distance d of root.
RootedHypergraph ball(const Hypergraph& h, Vertex root, int d);

// Keeps the edges e with |e| <= delta whose vertices all have degree <= delta.
Hypergraph truncate(const Hypergraph& h, std::size_t delta);

// Isomorphism-invariant code of the root's component. Throws HypergraphError
// when the graph is not a hypertree.
std::string canonical_code(const Hypergraph& tree, Vertex root);
std::string canonical_code(const RootedHypergraph& tree);

// Sub-hypergraph induced by a vertex subset, re-indexed in the order given.
Hypergraph induced(const Hypergraph& h, std::span<const Vertex> vertices);

}  // namespace hb
