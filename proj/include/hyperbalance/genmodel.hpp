// genmodel.hpp - vertex types, size-biased laws, Galton-Watson hypertrees and
// the hypergraph configuration model.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hyperbalance/hypergraph.hpp"
#include "hyperbalance/rng.hpp"

namespace hb {

// counts[k] = number of incident edges of size k; zero entries are not stored.
struct TypeVector {
    std::map<int, int> counts;

    TypeVector() = default;
    explicit TypeVector(std::map<int, int> c);

    int operator[](int k) const;
    int norm1() const;   // total degree
    int height() const;  // largest size with a nonzero count, 0 for the zero type
    bool is_zero() const { return counts.empty(); }

    TypeVector plus_unit(int k) const;
    TypeVector minus_unit(int k) const;

    friend bool operator==(const TypeVector&, const TypeVector&) = default;
    friend auto operator<=>(const TypeVector& a, const TypeVector& b) { return a.counts <=> b.counts; }

    // e_k with an optional multiplicity.
    static TypeVector unit(int k, int times = 1);
};

// Finite probability table over types.
class TypeDistribution {
public:
    TypeDistribution() = default;
    // Merges repeated types, drops zero weights, and checks the total is one.
    explicit TypeDistribution(std::vector<std::pair<TypeVector, double>> table, double tol = 1e-12);

    const std::vector<std::pair<TypeVector, double>>& table() const { return table_; }
    double probability(const TypeVector& g) const;

    // E[Gamma(k)].
    double expected_count(int k) const;
    // Sizes k with E[Gamma(k)] > 0, ascending.
    std::vector<int> edge_sizes() const;
    int max_degree() const;

    const TypeVector& sample(Rng& rng) const;

    static TypeDistribution delta(TypeVector g);

private:
    std::vector<std::pair<TypeVector, double>> table_;
    std::vector<double> cumulative_;
};

using TypeSequence = std::vector<TypeVector>;

// Law of the remaining type of a vertex reached through a size-m edge. When
// E[Gamma(m)] = 0 the point mass on the zero type is returned.
TypeDistribution size_biased(const TypeDistribution& p, int m);

// Size-biased laws for every edge size of p, computed once.
class SizeBiasedFamily {
public:
    explicit SizeBiasedFamily(const TypeDistribution& p);
    const TypeDistribution& at(int k) const;
    const TypeDistribution& base() const { return base_; }

private:
    TypeDistribution base_;
    std::map<int, TypeDistribution> by_size_;
    TypeDistribution zero_;
};

// Unimodular Galton-Watson hypertree truncated at depth d: root type ~ p,
// a vertex reached through a size-s edge has remaining type ~ size_biased(p, s).
// Vertices are numbered in breadth-first order, root 0.
RootedHypergraph sample_ugwt(const SizeBiasedFamily& family, int depth, Rng& rng);
RootedHypergraph sample_ugwt(const TypeDistribution& p, int depth, std::uint64_t seed);

// Same tree with root type ~ size_biased(p, k).
RootedHypergraph sample_gwt_k(const SizeBiasedFamily& family, int k, int depth, Rng& rng);
RootedHypergraph sample_gwt_k(const TypeDistribution& p, int k, int depth, std::uint64_t seed);

// Throws HypergraphError unless k divides sum_i gamma_i(k) for every k.
void check_divisibility(const TypeSequence& seq);

// Uniform grouping of the size-k partial edges into blocks of k, for each k.
MultiHypergraph sample_config(const TypeSequence& seq, Rng& rng);
MultiHypergraph sample_config(const TypeSequence& seq, std::uint64_t seed);

// Drops edges with a repeated vertex, then every edge whose vertex set occurs
// more than once (all copies).
Hypergraph erase(const MultiHypergraph& h);

// i.i.d. types followed by the minimal divisibility repair: for each k with
// remainder r != 0, k - r distinct uniformly chosen vertices get one more
// size-k partial edge.
TypeSequence draw_type_sequence(const TypeDistribution& p, std::size_t n, Rng& rng);
TypeSequence draw_type_sequence(const TypeDistribution& p, std::size_t n, std::uint64_t seed);

// {"types": [{"counts": {"2": 1}, "p": 0.5}, ...]}
TypeDistribution type_distribution_from_json(const nlohmann::json& j);
TypeDistribution parse_type_distribution(const std::string& text);
nlohmann::json to_json(const TypeDistribution& p);

// {"types": [{"2": 1, "3": 2}, {...}, ...]}, one entry per vertex.
TypeSequence type_sequence_from_json(const nlohmann::json& j);
TypeSequence parse_type_sequence(const std::string& text);
nlohmann::json to_json(const TypeSequence& seq);
nlohmann::json to_json(const TypeVector& g);

}  // namespace hb
