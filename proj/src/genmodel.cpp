#include "hyperbalance/genmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace hb {

TypeVector::TypeVector(std::map<int, int> c) {
    for (auto [k, v] : c) {
        if (k < 2) throw HypergraphError("type entries need edge size >= 2");
        if (v < 0) throw HypergraphError("type entries must be nonnegative");
        if (v > 0) counts.emplace(k, v);
    }
}

int TypeVector::operator[](int k) const {
    auto it = counts.find(k);
    return it == counts.end() ? 0 : it->second;
}

int TypeVector::norm1() const {
    int s = 0;
    for (auto [k, v] : counts) s += v;
    return s;
}

int TypeVector::height() const { return counts.empty() ? 0 : counts.rbegin()->first; }

TypeVector TypeVector::plus_unit(int k) const {
    TypeVector out = *this;
    out.counts[k] += 1;
    return out;
}

TypeVector TypeVector::minus_unit(int k) const {
    TypeVector out = *this;
    auto it = out.counts.find(k);
    if (it == out.counts.end()) throw HypergraphError("type has no edge of this size");
    if (--it->second == 0) out.counts.erase(it);
    return out;
}

TypeVector TypeVector::unit(int k, int times) { return TypeVector(std::map<int, int>{{k, times}}); }

TypeDistribution::TypeDistribution(std::vector<std::pair<TypeVector, double>> table, double tol) {
    std::map<TypeVector, double> merged;
    double total = 0.0;
    for (auto& [g, p] : table) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw HypergraphError("type probabilities must be finite and >= 0");
        if (p == 0.0) continue;
        merged[g] += p;
        total += p;
    }
    if (merged.empty() || std::abs(total - 1.0) > tol) {
        throw HypergraphError("type probabilities must sum to one");
    }
    double acc = 0.0;
    for (auto& [g, p] : merged) {
        table_.emplace_back(g, p);
        acc += p;
        cumulative_.push_back(acc);
    }
    cumulative_.back() = 1.0;
}

double TypeDistribution::probability(const TypeVector& g) const {
    for (const auto& [h, p] : table_) {
        if (h == g) return p;
    }
    return 0.0;
}

double TypeDistribution::expected_count(int k) const {
    double s = 0.0;
    for (const auto& [g, p] : table_) s += g[k] * p;
    return s;
}

std::vector<int> TypeDistribution::edge_sizes() const {
    std::set<int> sizes;
    for (const auto& [g, p] : table_) {
        for (auto [k, v] : g.counts) sizes.insert(k);
    }
    return {sizes.begin(), sizes.end()};
}

int TypeDistribution::max_degree() const {
    int d = 0;
    for (const auto& [g, p] : table_) d = std::max(d, g.norm1());
    return d;
}

const TypeVector& TypeDistribution::sample(Rng& rng) const {
    double u = uniform01(rng);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), table_.size() - 1);
    return table_[idx].first;
}

TypeDistribution TypeDistribution::delta(TypeVector g) { return TypeDistribution({{std::move(g), 1.0}}); }

TypeDistribution size_biased(const TypeDistribution& p, int m) {
    const double mean = p.expected_count(m);
    if (mean <= 0.0) return TypeDistribution::delta(TypeVector{});
    std::vector<std::pair<TypeVector, double>> table;
    for (const auto& [g, w] : p.table()) {
        int c = g[m];
        if (c > 0) table.emplace_back(g.minus_unit(m), c * w / mean);
    }
    return TypeDistribution(std::move(table), 1e-9);
}

SizeBiasedFamily::SizeBiasedFamily(const TypeDistribution& p)
    : base_(p), zero_(TypeDistribution::delta(TypeVector{})) {
    for (int k : p.edge_sizes()) by_size_.emplace(k, size_biased(p, k));
}

const TypeDistribution& SizeBiasedFamily::at(int k) const {
    auto it = by_size_.find(k);
    return it == by_size_.end() ? zero_ : it->second;
}

namespace {

RootedHypergraph grow_tree(const SizeBiasedFamily& family, const TypeVector& root_type, int depth, Rng& rng) {
    struct Pending {
        Vertex v;
        int level;
        TypeVector type;
    };
    std::vector<std::vector<Vertex>> edges;
    std::vector<Pending> queue;
    queue.push_back({0, 0, root_type});
    Vertex next = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        if (queue[head].level >= depth) continue;
        const Vertex v = queue[head].v;
        const int level = queue[head].level;
        const TypeVector type = queue[head].type;
        for (auto [k, count] : type.counts) {
            const TypeDistribution& child_law = family.at(k);
            for (int c = 0; c < count; ++c) {
                std::vector<Vertex> edge{v};
                for (int j = 1; j < k; ++j) {
                    Vertex child = next++;
                    edge.push_back(child);
                    TypeVector child_type = level + 1 < depth ? child_law.sample(rng) : TypeVector{};
                    queue.push_back({child, level + 1, std::move(child_type)});
                }
                edges.push_back(std::move(edge));
            }
        }
    }
    RootedHypergraph out;
    out.graph = Hypergraph(next, std::move(edges));
    out.root = 0;
    out.depth = depth;
    out.original.resize(next);
    std::iota(out.original.begin(), out.original.end(), Vertex{0});
    out.is_tree = true;
    return out;
}

}  // namespace

RootedHypergraph sample_ugwt(const SizeBiasedFamily& family, int depth, Rng& rng) {
    if (depth < 0) throw HypergraphError("depth must be nonnegative");
    TypeVector root = depth > 0 ? family.base().sample(rng) : TypeVector{};
    return grow_tree(family, root, depth, rng);
}

RootedHypergraph sample_ugwt(const TypeDistribution& p, int depth, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    return sample_ugwt(SizeBiasedFamily(p), depth, rng);
}

RootedHypergraph sample_gwt_k(const SizeBiasedFamily& family, int k, int depth, Rng& rng) {
    if (depth < 0) throw HypergraphError("depth must be nonnegative");
    TypeVector root = depth > 0 ? family.at(k).sample(rng) : TypeVector{};
    return grow_tree(family, root, depth, rng);
}

RootedHypergraph sample_gwt_k(const TypeDistribution& p, int k, int depth, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    return sample_gwt_k(SizeBiasedFamily(p), k, depth, rng);
}

namespace {

std::map<int, long long> stub_totals(const TypeSequence& seq) {
    std::map<int, long long> totals;
    for (const auto& g : seq) {
        for (auto [k, v] : g.counts) totals[k] += v;
    }
    return totals;
}

template <typename T>
void shuffle_in_place(std::vector<T>& items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = uniform_index(rng, i);
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace

void check_divisibility(const TypeSequence& seq) {
    for (auto [k, total] : stub_totals(seq)) {
        if (total % k != 0) {
            throw HypergraphError("size-" + std::to_string(k) + " partial edges (" + std::to_string(total) +
                                  ") are not divisible by " + std::to_string(k));
        }
    }
}

MultiHypergraph sample_config(const TypeSequence& seq, Rng& rng) {
    check_divisibility(seq);
    MultiHypergraph out;
    out.n = seq.size();
    for (auto [k, total] : stub_totals(seq)) {
        std::vector<Vertex> stubs;
        stubs.reserve(static_cast<std::size_t>(total));
        for (Vertex v = 0; v < seq.size(); ++v) stubs.insert(stubs.end(), seq[v][k], v);
        shuffle_in_place(stubs, rng);
        for (std::size_t start = 0; start < stubs.size(); start += k) {
            out.edges.emplace_back(stubs.begin() + start, stubs.begin() + start + k);
        }
    }
    return out;
}

MultiHypergraph sample_config(const TypeSequence& seq, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    return sample_config(seq, rng);
}

Hypergraph erase(const MultiHypergraph& h) {
    std::vector<std::vector<Vertex>> simple;
    for (const auto& edge : h.edges) {
        std::vector<Vertex> sorted = edge;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
        simple.push_back(std::move(sorted));
    }
    std::map<std::vector<Vertex>, int> multiplicity;
    for (const auto& e : simple) ++multiplicity[e];
    std::vector<std::vector<Vertex>> kept;
    for (auto& e : simple) {
        if (multiplicity[e] == 1) kept.push_back(std::move(e));
    }
    return Hypergraph(h.n, std::move(kept));
}

TypeSequence draw_type_sequence(const TypeDistribution& p, std::size_t n, Rng& rng) {
    if (n == 0) throw HypergraphError("type sequence needs n >= 1");
    TypeSequence seq;
    seq.reserve(n);
    for (std::size_t i = 0; i < n; ++i) seq.push_back(p.sample(rng));
    for (auto [k, total] : stub_totals(seq)) {
        long long missing = total % k == 0 ? 0 : k - total % k;
        while (missing > 0) {
            std::size_t take = static_cast<std::size_t>(std::min<long long>(missing, static_cast<long long>(n)));
            // partial Fisher-Yates: the first `take` slots become a uniform subset
            std::vector<Vertex> idx(n);
            std::iota(idx.begin(), idx.end(), Vertex{0});
            for (std::size_t i = 0; i < take; ++i) {
                std::size_t j = i + uniform_index(rng, n - i);
                std::swap(idx[i], idx[j]);
                seq[idx[i]] = seq[idx[i]].plus_unit(k);
            }
            missing -= static_cast<long long>(take);
        }
    }
    return seq;
}

TypeSequence draw_type_sequence(const TypeDistribution& p, std::size_t n, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    return draw_type_sequence(p, n, rng);
}

namespace {

TypeVector type_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw HypergraphError("type counts must be a JSON object");
    std::map<int, int> counts;
    for (auto it = j.begin(); it != j.end(); ++it) {
        int k = 0;
        try {
            k = std::stoi(it.key());
        } catch (const std::exception&) {
            throw HypergraphError("type key \"" + it.key() + "\" is not an integer");
        }
        if (!it.value().is_number_integer()) throw HypergraphError("type counts must be integers");
        counts[k] = it.value().get<int>();
    }
    return TypeVector(std::move(counts));
}

nlohmann::json parse_or_throw(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw HypergraphError(std::string("malformed JSON: ") + err.what());
    }
}

}  // namespace

nlohmann::json to_json(const TypeVector& g) {
    nlohmann::json j = nlohmann::json::object();
    for (auto [k, v] : g.counts) j[std::to_string(k)] = v;
    return j;
}

TypeDistribution type_distribution_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("types")) throw HypergraphError("type distribution JSON needs \"types\"");
    std::vector<std::pair<TypeVector, double>> table;
    for (const auto& entry : j.at("types")) {
        table.emplace_back(type_from_json(entry.at("counts")), entry.at("p").get<double>());
    }
    return TypeDistribution(std::move(table));
}

TypeDistribution parse_type_distribution(const std::string& text) {
    return type_distribution_from_json(parse_or_throw(text));
}

nlohmann::json to_json(const TypeDistribution& p) {
    nlohmann::json types = nlohmann::json::array();
    for (const auto& [g, w] : p.table()) types.push_back({{"counts", to_json(g)}, {"p", w}});
    return nlohmann::json{{"types", types}};
}

TypeSequence type_sequence_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("types")) throw HypergraphError("type sequence JSON needs \"types\"");
    TypeSequence seq;
    for (const auto& entry : j.at("types")) seq.push_back(type_from_json(entry));
    return seq;
}

TypeSequence parse_type_sequence(const std::string& text) { return type_sequence_from_json(parse_or_throw(text)); }

nlohmann::json to_json(const TypeSequence& seq) {
    nlohmann::json types = nlohmann::json::array();
    for (const auto& g : seq) types.push_back(to_json(g));
    return nlohmann::json{{"types", types}};
}

}  // namespace hb
