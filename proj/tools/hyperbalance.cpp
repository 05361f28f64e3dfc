// hyperbalance - command-line front end.
//
// Every command writes into <out>/<command>/<tag>/ and records its full
// configuration in manifest.json there. Outputs depend only on inputs, flags
// and the seed.
//
// Exit codes: 0 success, 1 usage or parse error, 2 numerical non-convergence,
// 3 statistical acceptance failure (experiment commands run with --assert).

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hyperbalance/balancer.hpp"
#include "hyperbalance/experiments.hpp"
#include "hyperbalance/genmodel.hpp"
#include "hyperbalance/lwc.hpp"
#include "hyperbalance/maxload.hpp"
#include "hyperbalance/rde.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitAssert = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AssertFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Output {
public:
    Output(const std::string& root, const std::string& command, const std::string& tag)
        : dir_(fs::path(root) / command / tag) {
        fs::create_directories(dir_);
        manifest_["command"] = command;
        manifest_["files"] = json::array();
    }

    json& config() { return manifest_["config"]; }

    void write(const std::string& name, const std::string& content) {
        std::ofstream out(dir_ / name, std::ios::binary);
        if (!out) throw UsageError("cannot write " + (dir_ / name).string());
        out << content;
        manifest_["files"].push_back(name);
    }

    void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

    void finish(const json& summary = nullptr) {
        if (!summary.is_null()) manifest_["summary"] = summary;
        std::ofstream out(dir_ / "manifest.json", std::ios::binary);
        out << manifest_.dump(2) << "\n";
        std::cout << (dir_ / "manifest.json").string() << "\n";
    }

private:
    fs::path dir_;
    json manifest_;
};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Common {
    std::string out = "out";
    std::string tag = "run";
    std::uint64_t seed = 0;
    bool seed_given = false;
    unsigned workers = 1;

    std::uint64_t resolved_seed() const {
        if (seed_given) return seed;
        if (const char* env = std::getenv("HYPERBALANCE_SEED")) {
            try {
                std::size_t used = 0;
                std::uint64_t s = std::stoull(env, &used);
                if (used == std::string(env).size()) return s;
            } catch (const std::exception&) {
            }
            throw UsageError("HYPERBALANCE_SEED is not an unsigned integer");
        }
        return 1;
    }
};

void add_common(CLI::App* cmd, Common& c, bool seeded, bool parallel) {
    cmd->add_option("--out", c.out, "output root directory")->capture_default_str();
    cmd->add_option("--tag", c.tag, "run directory name under <out>/<command>/")->capture_default_str();
    if (seeded) {
        cmd->add_option_function<std::uint64_t>(
            "--seed",
            [&c](std::uint64_t s) {
                c.seed = s;
                c.seed_given = true;
            },
            "RNG seed (falls back to $HYPERBALANCE_SEED, then 1)");
    }
    if (parallel) cmd->add_option("--workers", c.workers, "parallel workers")->check(CLI::PositiveNumber)->capture_default_str();
}

// --- balance ---------------------------------------------------------------

struct BalanceArgs {
    std::string input;
    std::string baseload;
    double eps = 0.0;
    hb::SolveParams params;
    std::string order = "forward";
};

int run_balance(const BalanceArgs& a, const Common& c) {
    hb::Hypergraph h = hb::parse_hypergraph(read_file(a.input));
    hb::Baseload b = a.baseload.empty() ? hb::Baseload::zeros(h.num_vertices())
                                        : hb::parse_baseload(read_file(a.baseload), h.num_vertices());
    hb::SolveParams params = a.params;
    params.epsilon = a.eps;
    params.order = a.order == "alternating" ? hb::SweepOrder::Alternating : hb::SweepOrder::Forward;

    Output out(c.out, "balance", c.tag);
    out.config() = {{"input", a.input},     {"baseload", a.baseload.empty() ? json(nullptr) : json(a.baseload)},
                    {"epsilon", a.eps},     {"tol", params.tol},
                    {"damping", params.damping}, {"max_iters", params.max_iters},
                    {"order", a.order}};
    hb::SolveResult r = a.eps > 0.0 ? hb::epsilon_balance(h, b, params) : hb::balance(h, b, params);
    out.write_json("allocation.json", hb::to_json(r.allocation));
    out.write_json("loads.json", hb::to_json(r.loads));
    json report;
    if (a.eps > 0.0) {
        report = {{"mode", "epsilon"}, {"epsilon", a.eps}, {"residual", hb::epsilon_residual(h, r.allocation, b, a.eps)}};
    } else {
        report = hb::to_json(hb::verify_balanced(h, r.allocation, b, 1e-8));
        report["mode"] = "exact";
    }
    report["sweeps"] = r.sweeps;
    report["last_delta"] = r.last_delta;
    report["max_load"] = r.loads.max();
    out.write_json("report.json", report);
    out.finish({{"max_load", r.loads.max()}, {"sweeps", r.sweeps}});
    return kExitOk;
}

// --- maxload ---------------------------------------------------------------

int run_maxload(const std::string& input, const std::string& method, const hb::SolveParams& params,
                const Common& c) {
    hb::Hypergraph h = hb::parse_hypergraph(read_file(input));
    Output out(c.out, "maxload", c.tag);
    out.config() = {{"input", input}, {"method", method}, {"tol", params.tol}};
    json result;
    if (method == "brute") {
        result = hb::to_json(hb::max_density_bruteforce(h));
    } else if (method == "flow") {
        result = hb::to_json(hb::max_density_flow(h));
    } else {
        double rho = hb::rho_finite(h, params);
        result = {{"rho", rho}, {"density", nullptr}, {"set", nullptr}};
    }
    result["method"] = method;
    out.write_json("maxload.json", result);
    out.finish({{"rho", result["rho"]}});
    return kExitOk;
}

// --- sample ----------------------------------------------------------------

struct SampleArgs {
    std::string model = "config";
    std::string dist;
    std::string types;
    std::size_t n = 0;
    int depth = 2;
    int k = 2;
    bool erase = false;
};

int run_sample(const SampleArgs& a, const Common& c) {
    const std::uint64_t seed = c.resolved_seed();
    Output out(c.out, "sample", c.tag);
    out.config() = {{"model", a.model}, {"dist", a.dist}, {"types", a.types}, {"n", a.n},
                    {"depth", a.depth}, {"k", a.k},       {"erase", a.erase}, {"seed", seed}};
    json summary;
    if (a.model == "config") {
        hb::Rng rng = hb::make_rng(seed);
        hb::TypeSequence seq;
        if (!a.types.empty()) {
            seq = hb::parse_type_sequence(read_file(a.types));
        } else if (!a.dist.empty()) {
            if (a.n == 0) throw UsageError("--n is required with --dist");
            seq = hb::draw_type_sequence(hb::parse_type_distribution(read_file(a.dist)), a.n, rng);
        } else {
            throw UsageError("config model needs --types or --dist");
        }
        hb::MultiHypergraph mh = hb::sample_config(seq, rng);
        if (a.erase) {
            hb::Hypergraph h = hb::erase(mh);
            out.write_json("hypergraph.json", hb::to_json(h));
            summary = {{"vertices", h.num_vertices()}, {"edges", h.num_edges()}};
        } else {
            out.write_json("hypergraph.json", hb::to_json(mh));
            summary = {{"vertices", mh.n}, {"edges", mh.edges.size()}};
        }
        out.write_json("types.json", hb::to_json(seq));
    } else {
        if (a.dist.empty()) throw UsageError(a.model + " needs --dist");
        hb::TypeDistribution p = hb::parse_type_distribution(read_file(a.dist));
        hb::RootedHypergraph t =
            a.model == "ugwt" ? hb::sample_ugwt(p, a.depth, seed) : hb::sample_gwt_k(p, a.k, a.depth, seed);
        json j = hb::to_json(t.graph);
        j["root"] = t.root;
        j["code"] = hb::canonical_code(t);
        out.write_json("hypergraph.json", j);
        summary = {{"vertices", t.graph.num_vertices()}, {"edges", t.graph.num_edges()}};
    }
    out.finish(summary);
    return kExitOk;
}

// --- lwc -------------------------------------------------------------------

struct LwcArgs {
    std::string dist;
    hb::LwcConfig config;
    bool check = false;
};

int run_lwc(LwcArgs a, const Common& c) {
    a.config.seed = c.resolved_seed();
    a.config.workers = c.workers;
    hb::TypeDistribution p = hb::parse_type_distribution(read_file(a.dist));
    Output out(c.out, "lwc", c.tag);
    out.config() = {{"dist", a.dist},
                    {"n_grid", a.config.n_grid},
                    {"depth", a.config.depth},
                    {"reps", a.config.reps},
                    {"reference_samples", a.config.reference_samples},
                    {"seed", a.config.seed},
                    {"workers", a.config.workers},
                    {"assert", a.check}};
    hb::LwcExperiment res = hb::run_lwc_experiment(p, a.config);

    const std::string seed_line = "# seed=" + std::to_string(a.config.seed) + "\n";
    std::string rows = seed_line + "n[vertices],rep[index],tv_distance[probability],non_tree_mass[fraction]\n";
    for (const auto& r : res.rows) {
        rows += std::to_string(r.n) + "," + std::to_string(r.rep) + "," + fmt(r.tv) + "," + fmt(r.non_tree) + "\n";
    }
    out.write("tv.csv", rows);

    std::string summary_csv = seed_line + "n[vertices],median_tv[probability],median_non_tree[fraction]\n";
    std::vector<double> med_tv, med_nt;
    for (std::size_t n : a.config.n_grid) {
        std::vector<double> tv, nt;
        for (const auto& r : res.rows) {
            if (r.n == n) {
                tv.push_back(r.tv);
                nt.push_back(r.non_tree);
            }
        }
        med_tv.push_back(hb::median(tv));
        med_nt.push_back(hb::median(nt));
        summary_csv += std::to_string(n) + "," + fmt(med_tv.back()) + "," + fmt(med_nt.back()) + "\n";
    }
    out.write("summary.csv", summary_csv);
    out.write("reference_census.csv", seed_line + hb::census_csv(res.reference));

    bool decreasing = true;
    for (std::size_t i = 1; i < med_tv.size(); ++i) decreasing = decreasing && med_tv[i] < med_tv[i - 1];
    bool small = med_tv.back() < 0.05 && med_nt.back() < 0.05;
    out.finish({{"median_tv", med_tv}, {"median_non_tree", med_nt}, {"decreasing", decreasing}, {"final_below_0.05", small}});
    if (a.check && !(decreasing && small)) throw AssertFailure("lwc acceptance check failed");
    return kExitOk;
}

// --- rde -------------------------------------------------------------------

struct RdeArgs {
    std::string dist;
    std::vector<double> t;
    std::vector<double> t_grid;  // start, stop, step
    bool rho = false;
    hb::RDEParams params;
    bool write_pools = false;
};

int run_rde(RdeArgs a, const Common& c) {
    a.params.seed = c.resolved_seed();
    a.params.workers = c.workers;
    a.params.validate();
    hb::TypeDistribution p = hb::parse_type_distribution(read_file(a.dist));
    std::vector<double> ts = a.t;
    if (!a.t_grid.empty()) {
        if (a.t_grid.size() != 3 || !(a.t_grid[2] > 0.0)) throw UsageError("--t-grid takes start,stop,step with step > 0");
        const auto steps = static_cast<std::size_t>(std::floor((a.t_grid[1] - a.t_grid[0]) / a.t_grid[2] + 1e-9));
        for (std::size_t j = 0; j <= steps; ++j) ts.push_back(a.t_grid[0] + static_cast<double>(j) * a.t_grid[2]);
    }
    if (ts.empty() && !a.rho) throw UsageError("rde needs --t, --t-grid or --rho");

    Output out(c.out, "rde", c.tag);
    out.config() = {{"dist", a.dist},
                    {"t", ts},
                    {"rho", a.rho},
                    {"pool_size", a.params.pool_size},
                    {"max_iterations", a.params.max_iterations},
                    {"ks_threshold", a.params.ks_threshold},
                    {"ks_quantiles", a.params.ks_quantiles},
                    {"eval_samples", a.params.eval_samples},
                    {"rho_tolerance", a.params.rho_tolerance},
                    {"seed", a.params.seed},
                    {"workers", a.params.workers}};
    json summary = json::object();
    bool all_converged = true;
    if (!ts.empty()) {
        std::string csv = "# seed=" + std::to_string(a.params.seed) + "\n" +
                          "t[load],phi[load],stderr[load],term1[load],term2[load],iterations[count],converged[bool]\n";
        json results = json::array();
        for (std::size_t j = 0; j < ts.size(); ++j) {
            auto [pools, diag] = hb::rde_solve(p, ts[j], a.params);
            hb::MeanExcessEstimate e =
                hb::mean_excess(p, ts[j], pools, a.params.eval_samples, hb::derive_seed(a.params.seed, {0x4d45ULL}));
            all_converged = all_converged && diag.converged;
            json r = hb::to_json(e);
            r["iterations"] = diag.iterations;
            r["converged"] = diag.converged;
            r["ks_trajectory"] = diag.ks_trajectory;
            results.push_back(r);
            csv += fmt(e.t) + "," + fmt(e.phi) + "," + fmt(e.std_error) + "," + fmt(e.term1) + "," + fmt(e.term2) + "," +
                   std::to_string(diag.iterations) + "," + (diag.converged ? "1" : "0") + "\n";
            if (a.write_pools) out.write("pools_" + std::to_string(j) + ".csv", hb::pools_csv(pools));
        }
        out.write_json("phi.json", results);
        out.write("phi.csv", csv);
        summary["phi"] = results.size();
    }
    if (a.rho) {
        double rho = hb::rho_limit(p, a.params);
        out.write_json("rho.json", {{"rho", rho}, {"tolerance", a.params.rho_tolerance}});
        summary["rho"] = rho;
    }
    summary["converged"] = all_converged;
    out.finish(summary);
    return all_converged ? kExitOk : kExitNoConvergence;
}

// --- experiment-maxload ----------------------------------------------------

struct MaxloadExpArgs {
    std::string dist;
    hb::MaxloadConfig config;
    hb::RDEParams rde;
    bool check = false;
};

int run_experiment_maxload(MaxloadExpArgs a, const Common& c) {
    const std::uint64_t seed = c.resolved_seed();
    a.config.seed = seed;
    a.config.workers = c.workers;
    a.rde.seed = hb::derive_seed(seed, {0x7268ULL});
    a.rde.workers = c.workers;
    a.rde.validate();
    if (a.config.phi_t.empty()) a.config.phi_t = {0.1, 0.3, 0.5, 0.6, 0.7};
    hb::TypeDistribution p = hb::parse_type_distribution(read_file(a.dist));

    Output out(c.out, "experiment-maxload", c.tag);
    out.config() = {{"dist", a.dist},
                    {"n_grid", a.config.n_grid},
                    {"reps", a.config.reps},
                    {"phi_t", a.config.phi_t},
                    {"tol", a.config.solve.tol},
                    {"seed", seed},
                    {"workers", c.workers},
                    {"rde_seed", a.rde.seed},
                    {"pool_size", a.rde.pool_size},
                    {"eval_samples", a.rde.eval_samples},
                    {"rho_tolerance", a.rde.rho_tolerance},
                    {"assert", a.check}};

    std::vector<hb::MaxloadRow> rows = hb::run_maxload_experiment(p, a.config);
    const double limit = hb::rho_limit(p, a.rde);

    const std::string seed_line = "# seed=" + std::to_string(seed) + "\n";
    std::string csv = seed_line + "n[vertices],rep[index],edges[count],rho_balance[load],rho_flow[load]";
    for (double t : a.config.phi_t) csv += ",phi_t" + fmt(t) + "[load]";
    csv += "\n";
    for (const auto& r : rows) {
        csv += std::to_string(r.n) + "," + std::to_string(r.rep) + "," + std::to_string(r.edges) + "," +
               fmt(r.rho_balance) + "," + fmt(r.rho_flow);
        for (double x : r.phi) csv += "," + fmt(x);
        csv += "\n";
    }
    out.write("replicates.csv", csv);

    std::string summary_csv = seed_line + "n[vertices],median_rho[load],rho_limit[load],abs_diff[load]\n";
    std::vector<double> diffs;
    for (std::size_t n : a.config.n_grid) {
        std::vector<double> rho;
        for (const auto& r : rows) {
            if (r.n == n) rho.push_back(r.rho_flow);
        }
        double med = hb::median(rho);
        diffs.push_back(std::abs(med - limit));
        summary_csv += std::to_string(n) + "," + fmt(med) + "," + fmt(limit) + "," + fmt(diffs.back()) + "\n";
    }
    out.write("summary.csv", summary_csv);

    const std::size_t n_top = *std::max_element(a.config.n_grid.begin(), a.config.n_grid.end());
    std::vector<hb::PhiComparison> cmp = hb::compare_phi(p, rows, n_top, a.config.phi_t, a.rde);
    std::string phi_csv = seed_line +
                          "t[load],phi_limit[load],limit_stderr[load],phi_finite[load],finite_stderr[load],"
                          "excess_over_sigma[ratio]\n";
    bool bound_ok = true;
    for (const auto& x : cmp) {
        double ratio = x.sigma() > 0.0 ? x.excess() / x.sigma() : (x.excess() > 0.0 ? INFINITY : 0.0);
        bound_ok = bound_ok && x.excess() <= 3.0 * x.sigma();
        phi_csv += fmt(x.t) + "," + fmt(x.phi_limit) + "," + fmt(x.limit_stderr) + "," + fmt(x.phi_finite) + "," +
                   fmt(x.finite_stderr) + "," + fmt(ratio) + "\n";
    }
    out.write("phi_bound.csv", phi_csv);

    bool decreasing = true;
    for (std::size_t i = 1; i < diffs.size(); ++i) decreasing = decreasing && diffs[i] < diffs[i - 1];
    bool close = diffs.back() < 0.1;
    out.finish({{"rho_limit", limit},
                {"abs_diff", diffs},
                {"diff_decreasing", decreasing},
                {"final_below_0.1", close},
                {"phi_lower_bound_ok", bound_ok}});
    if (a.check && !(decreasing && close && bound_ok)) throw AssertFailure("experiment-maxload acceptance check failed");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Balanced loads, maximum loads and random hypergraph limits"};
    app.require_subcommand(1);
    Common common;

    BalanceArgs bal;
    auto* balance_cmd = app.add_subcommand("balance", "balanced or epsilon-balanced allocation of a hypergraph");
    balance_cmd->add_option("input", bal.input, "hypergraph JSON")->required();
    balance_cmd->add_option("--baseload", bal.baseload, "baseload JSON {\"b\": [...]}");
    balance_cmd->add_option("--eps", bal.eps, "entropic smoothing; 0 solves the exact problem")->check(CLI::NonNegativeNumber);
    balance_cmd->add_option("--tol", bal.params.tol, "sup-norm load change per sweep")->capture_default_str();
    balance_cmd->add_option("--damping", bal.params.damping, "relaxation of epsilon edge updates")->capture_default_str();
    balance_cmd->add_option("--max-iters", bal.params.max_iters, "sweep cap")->capture_default_str();
    balance_cmd->add_option("--order", bal.order, "edge sweep order")->check(CLI::IsMember({"forward", "alternating"}));
    add_common(balance_cmd, common, false, false);

    std::string ml_input, ml_method = "flow";
    hb::SolveParams ml_params;
    ml_params.tol = 1e-12;
    auto* maxload_cmd = app.add_subcommand("maxload", "maximum load / densest sub-hypergraph");
    maxload_cmd->add_option("input", ml_input, "hypergraph JSON")->required();
    maxload_cmd->add_option("--method", ml_method)->check(CLI::IsMember({"brute", "flow", "allocation"}))->capture_default_str();
    maxload_cmd->add_option("--tol", ml_params.tol, "balancer tolerance for --method allocation")->capture_default_str();
    add_common(maxload_cmd, common, false, false);

    SampleArgs smp;
    auto* sample_cmd = app.add_subcommand("sample", "draw a random hypergraph or hypertree");
    sample_cmd->add_option("--model", smp.model)->check(CLI::IsMember({"config", "ugwt", "gwtk"}))->capture_default_str();
    sample_cmd->add_option("--dist", smp.dist, "type distribution JSON");
    sample_cmd->add_option("--types", smp.types, "type sequence JSON (config model)");
    sample_cmd->add_option("--n", smp.n, "vertices when drawing types from --dist");
    sample_cmd->add_option("--depth", smp.depth, "tree depth")->check(CLI::NonNegativeNumber)->capture_default_str();
    sample_cmd->add_option("--k", smp.k, "edge size of the gwtk root link")->capture_default_str();
    sample_cmd->add_flag("--erase", smp.erase, "drop self-loops and every copy of repeated edges");
    add_common(sample_cmd, common, true, false);

    LwcArgs lwc;
    auto* lwc_cmd = app.add_subcommand("lwc", "neighborhood census of configuration samples vs. the tree limit");
    lwc_cmd->add_option("dist", lwc.dist, "type distribution JSON")->required();
    lwc_cmd->add_option("--n-grid", lwc.config.n_grid)->delimiter(',')->capture_default_str();
    lwc_cmd->add_option("--depth", lwc.config.depth)->check(CLI::NonNegativeNumber)->capture_default_str();
    lwc_cmd->add_option("--reps", lwc.config.reps)->check(CLI::PositiveNumber)->capture_default_str();
    lwc_cmd->add_option("--reference-samples", lwc.config.reference_samples)->check(CLI::PositiveNumber)->capture_default_str();
    lwc_cmd->add_flag("--assert", lwc.check, "exit 3 unless medians decrease and end below 0.05");
    add_common(lwc_cmd, common, true, true);

    RdeArgs rde;
    auto* rde_cmd = app.add_subcommand("rde", "population dynamics for the limit mean-excess function");
    rde_cmd->add_option("dist", rde.dist, "type distribution JSON")->required();
    rde_cmd->add_option("--t", rde.t, "evaluation level(s)")->delimiter(',');
    rde_cmd->add_option("--t-grid", rde.t_grid, "start,stop,step")->delimiter(',');
    rde_cmd->add_flag("--rho", rde.rho, "estimate the limiting maximum load");
    rde_cmd->add_option("--pool-size", rde.params.pool_size)->capture_default_str();
    rde_cmd->add_option("--max-iterations", rde.params.max_iterations)->capture_default_str();
    rde_cmd->add_option("--ks-threshold", rde.params.ks_threshold)->capture_default_str();
    rde_cmd->add_option("--eval-samples", rde.params.eval_samples)->capture_default_str();
    rde_cmd->add_option("--rho-tolerance", rde.params.rho_tolerance)->capture_default_str();
    rde_cmd->add_flag("--write-pools", rde.write_pools, "persist final pools as CSV");
    add_common(rde_cmd, common, true, true);

    MaxloadExpArgs mle;
    mle.config.solve.tol = 1e-12;
    auto* exp_cmd = app.add_subcommand("experiment-maxload", "finite maximum loads of configuration samples vs. the limit");
    exp_cmd->add_option("dist", mle.dist, "type distribution JSON")->required();
    exp_cmd->add_option("--n-grid", mle.config.n_grid)->delimiter(',')->capture_default_str();
    exp_cmd->add_option("--reps", mle.config.reps)->check(CLI::PositiveNumber)->capture_default_str();
    exp_cmd->add_option("--phi-t", mle.config.phi_t, "levels for the mean-excess comparison")->delimiter(',');
    exp_cmd->add_option("--pool-size", mle.rde.pool_size)->capture_default_str();
    exp_cmd->add_option("--eval-samples", mle.rde.eval_samples)->capture_default_str();
    exp_cmd->add_flag("--assert", mle.check, "exit 3 unless the acceptance checks hold");
    add_common(exp_cmd, common, true, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*balance_cmd) return run_balance(bal, common);
        if (*maxload_cmd) return run_maxload(ml_input, ml_method, ml_params, common);
        if (*sample_cmd) return run_sample(smp, common);
        if (*lwc_cmd) return run_lwc(lwc, common);
        if (*rde_cmd) return run_rde(rde, common);
        if (*exp_cmd) return run_experiment_maxload(mle, common);
    } catch (const hb::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const AssertFailure& e) {
        std::cerr << "assertion failed: " << e.what() << "\n";
        return kExitAssert;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
