#include "hyperbalance/treesolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hb {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Memoized evaluation of the inverse response for every directed pair
// (edge e, vertex j in e), i.e. the subtree hanging below j away from e.
class InverseRecursion {
public:
    InverseRecursion(const Hypergraph& tree, double t) : tree_(tree), t_(t) {
        offsets_.reserve(tree.num_edges() + 1);
        std::size_t acc = 0;
        for (const auto& edge : tree.edges()) {
            offsets_.push_back(acc);
            acc += edge.size();
        }
        memo_.assign(acc, std::numeric_limits<double>::quiet_NaN());
    }

    double subtree(std::size_t cut_edge, Vertex root) {
        if (cut_edge != Hypergraph::npos) {
            std::size_t slot = offsets_[cut_edge] + tree_.position(static_cast<EdgeIndex>(cut_edge), root);
            if (!std::isnan(memo_[slot])) return memo_[slot];
            return memo_[slot] = t_ - edge_contributions(cut_edge, root);
        }
        return t_ - edge_contributions(cut_edge, root);
    }

    // sum over edges e at root (except the cut one) of [1 - sum_j (inverse_j)^+]_0^1
    double edge_contributions(std::size_t cut_edge, Vertex root) {
        double total = 0.0;
        for (EdgeIndex e : tree_.incident(root)) {
            if (e == cut_edge) continue;
            double others = 0.0;
            for (Vertex j : tree_.edge(e)) {
                if (j != root) others += std::max(subtree(e, j), 0.0);
            }
            total += clamp01(1.0 - others);
        }
        return total;
    }

private:
    const Hypergraph& tree_;
    double t_;
    std::vector<std::size_t> offsets_;
    std::vector<double> memo_;
};

void require_tree(const Hypergraph& h) {
    if (!is_hypertree(h)) throw HypergraphError("input is not a hypertree");
}

}  // namespace

double response_inverse(const DirectedSubtree& s, double t) {
    if (s.tree == nullptr) throw HypergraphError("directed subtree has no tree");
    require_tree(*s.tree);
    if (s.root >= s.tree->num_vertices()) throw HypergraphError("root out of range");
    if (s.cut_edge != Hypergraph::npos && s.tree->position(static_cast<EdgeIndex>(s.cut_edge), s.root) == Hypergraph::npos) {
        throw HypergraphError("cut edge does not contain the root");
    }
    InverseRecursion rec(*s.tree, t);
    return rec.subtree(s.cut_edge, s.root);
}

bool root_load_exceeds(const Hypergraph& tree, Vertex root, double t) {
    require_tree(tree);
    if (root >= tree.num_vertices()) throw HypergraphError("root out of range");
    InverseRecursion rec(tree, t);
    return rec.edge_contributions(Hypergraph::npos, root) > t;
}

std::vector<double> tree_loads(const Hypergraph& tree, double precision) {
    require_tree(tree);
    std::vector<double> out(tree.num_vertices(), 0.0);
    for (Vertex v = 0; v < tree.num_vertices(); ++v) {
        double lo = 0.0;
        double hi = static_cast<double>(tree.degree(v));
        auto exceeds = [&](double t) {
            InverseRecursion rec(tree, t);
            return rec.edge_contributions(Hypergraph::npos, v) > t;
        };
        if (hi == 0.0 || !exceeds(lo)) {
            out[v] = 0.0;
            continue;
        }
        while (hi - lo > precision) {
            double mid = 0.5 * (lo + hi);
            if (exceeds(mid)) lo = mid; else hi = mid;
        }
        out[v] = hi;
    }
    return out;
}

}  // namespace hb
