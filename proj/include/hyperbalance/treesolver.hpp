// treesolver.hpp - balanced loads on finite hypertrees through the inverse
// response recursion.
#pragma once

#include <vector>

#include "hyperbalance/hypergraph.hpp"

namespace hb {

// The component of `root` after removing `cut_edge`, rooted at `root`.
// cut_edge == Hypergraph::npos means nothing is removed.
struct DirectedSubtree {
    const Hypergraph* tree = nullptr;
    std::size_t cut_edge = Hypergraph::npos;
    Vertex root = 0;
};

// Inverse response of the directed subtree at level t:
//   t - sum over edges e' at the root other than the cut edge of
//       [1 - sum over j in e', j != root of (inverse response of T_{e'->j})^+] clamped to [0,1].
double response_inverse(const DirectedSubtree& subtree, double t);

// Whether the balanced load at `root` strictly exceeds t.
bool root_load_exceeds(const Hypergraph& tree, Vertex root, double t);

// Balanced loads of every vertex, each located by bisection on
// root_load_exceeds over [0, degree] to within `precision`.
std::vector<double> tree_loads(const Hypergraph& tree, double precision = 1e-9);

}  // namespace hb
