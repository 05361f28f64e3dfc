// maxload.hpp - maximum balanced load and the densest sub-hypergraph.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperbalance/balancer.hpp"
#include "hyperbalance/hypergraph.hpp"

namespace hb {

// Nonnegative fraction kept in lowest terms.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t p, std::int64_t q);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
};

struct DensityResult {
    std::vector<Vertex> best_set;  // sorted
    Rational density;
    double rho = 0.0;
};

// Number of edges with every endpoint in `set`.
std::size_t edges_within(const Hypergraph& h, const std::vector<Vertex>& set);

// Exhaustive search over nonempty vertex subsets; ties go to the smallest set,
// then the lexicographically smallest. Requires n <= 22.
DensityResult max_density_bruteforce(const Hypergraph& h);

// Exact densest set by parametric min-cut on the network
// source -> edge (capacity q), edge -> its vertices (unbounded),
// vertex -> sink (capacity p) for the current density guess p/q.
// With canonical_set the returned set follows the brute-force tie rule.
DensityResult max_density_flow(const Hypergraph& h, bool canonical_set = true);

// Largest coordinate of the balanced load vector.
double rho_finite(const Hypergraph& h, const SolveParams& params = {});

nlohmann::json to_json(const DensityResult& r);

}  // namespace hb
