// lwc.hpp - depth-d neighborhood census and its comparison with the
// Galton-Watson limit.
#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "hyperbalance/genmodel.hpp"
#include "hyperbalance/hypergraph.hpp"

namespace hb {

inline constexpr const char* kNonTreeKey = "non-tree";

// Mass per canonical code; balls that are not hypertrees share kNonTreeKey.
struct Census {
    std::map<std::string, double> mass;
    std::size_t samples = 0;

    double at(const std::string& key) const {
        auto it = mass.find(key);
        return it == mass.end() ? 0.0 : it->second;
    }
    double total() const;
};

// Breadth-first ball around root; work is proportional to the ball, not to
// the whole hypergraph. Same output as ball().
RootedHypergraph explore(const Hypergraph& h, Vertex root, int depth);

// Exact census over every vertex of h.
Census neighborhood_census(const Hypergraph& h, int depth);

// Empirical census of `samples` independent UGWT(p) trees truncated at depth.
Census ugwt_census(const TypeDistribution& p, int depth, std::size_t samples, std::uint64_t seed);

// Half the l1 distance over the union of keys.
double tv_distance(const Census& a, const Census& b);

// "code,mass" header followed by one row per key in sorted order.
std::string census_csv(const Census& c);

}  // namespace hb
