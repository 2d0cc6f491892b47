// Command line front end: generate / quantify / analyze / simulate /
// mitigate / samplesize / validate, plus rerun to replay any recorded
// manifest. Exit codes: 0 ok, 2 validation problem, 3 I/O problem.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "imodel/cascade_io.hpp"
#include "imodel/errors.hpp"
#include "imodel/matrix_io.hpp"
#include "imodel/network.hpp"
#include "imodel/quantify.hpp"
#include "imodel/rng.hpp"
#include "imodel/sample_size.hpp"
#include "imodel/simulate.hpp"
#include "imodel/stats.hpp"
#include "imodel/synthetic.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using namespace imodel;

namespace {

int run_cli(const std::vector<std::string>& args);

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Every command records how to reproduce itself and what it wrote. The
// manifest itself is metadata: timings vary run to run, the listed outputs
// do not.
struct Manifest {
    std::string command;
    std::vector<std::string> argv;
    ordered_json counts = ordered_json::object();
    ordered_json parameters = ordered_json::object();
    std::vector<std::string> outputs;
    double elapsed_seconds = 0.0;

    void write(const fs::path& path) const {
        ordered_json doc;
        doc["tool"] = "imodel";
        doc["format_version"] = 1;
        doc["command"] = command;
        doc["argv"] = argv;
        doc["parameters"] = parameters;
        doc["counts"] = counts;
        doc["outputs"] = outputs;
        doc["timings_seconds"] = {{"total", elapsed_seconds}};
        write_text_file(path, doc.dump(2) + "\n");
    }
};

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

ordered_json parse_json_file(const fs::path& path) {
    try {
        return ordered_json::parse(read_text_file(path));
    } catch (const ordered_json::parse_error& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

CascadeSet load_cascades_arg(const std::string& path, const std::string& format,
                             std::int64_t n_override, bool dedupe) {
    LoadOptions opts;
    if (n_override > 0) opts.n_components = static_cast<ComponentId>(n_override);
    opts.dedupe_first = dedupe;
    return load_cascades(path, parse_cascade_format(format), opts);
}

ordered_json similarity_json(const SimilarityReport& rep) {
    auto opt = [](const std::optional<double>& v) {
        return v ? ordered_json(*v) : ordered_json(nullptr);
    };
    ordered_json j;
    j["s1"] = opt(rep.s1);
    j["s2"] = opt(rep.s2);
    j["s3"] = opt(rep.s3);
    j["s4"] = opt(rep.s4);
    j["s5"] = opt(rep.s5);
    j["shared_links"] = rep.shared;
    j["original_only_links"] = rep.original_only;
    j["simulated_only_links"] = rep.simulated_only;
    return j;
}

ordered_json distribution_json(const OutageDistribution& d) {
    ordered_json bins = ordered_json::array();
    for (const auto& [bin, p] : d.probability) bins.push_back({{"total", bin}, {"p", p}});
    return ordered_json{{"samples", d.samples}, {"bins", bins}};
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    std::string kind = "tree";
    std::int64_t n = 20;
    double density = 0.05;
    double b_min = 0.2, b_max = 0.8;
    double tau_min = 0.01, tau_max = 0.01;
    std::uint64_t system_seed = 0;
    std::uint64_t seed = 0;
    std::int64_t count = 1000;
    std::uint32_t streams = 1;
    std::string out;
    std::string format = "json";
    std::string truth_dir;
};

void cmd_generate(const GenerateArgs& a, Manifest& manifest) {
    GroundTruthSpec spec;
    spec.kind = parse_topology(a.kind);
    spec.n = static_cast<ComponentId>(a.n);
    spec.density = a.density;
    spec.b_min = a.b_min;
    spec.b_max = a.b_max;
    spec.tau_min = a.tau_min;
    spec.tau_max = a.tau_max;
    spec.seed = a.system_seed;
    const GroundTruth gt = make_ground_truth(spec);

    const SimResult r = generate_cascades(gt, a.count, a.seed, a.streams);
    save_cascades(r.cascades, a.out, parse_cascade_format(a.format));
    manifest.outputs.push_back(a.out);

    if (!a.truth_dir.empty()) {
        ensure_dir(a.truth_dir);
        const fs::path dir = a.truth_dir;
        write_prob_matrix_csv(dir / "B.csv", gt.matrix.b);
        write_double_vector_csv(dir / "tau.csv", gt.matrix.tau);
        manifest.outputs.push_back((dir / "B.csv").string());
        manifest.outputs.push_back((dir / "tau.csv").string());
    }
    manifest.counts["cascades"] = r.cascades.size();
    manifest.counts["discarded_empty_gen0"] = r.discarded_empty;
    manifest.counts["true_links"] = gt.matrix.b.nonzero_count();
}

// ---------------------------------------------------------------- quantify

struct QuantifyArgs {
    std::string cascades;
    std::string format = "json";
    std::int64_t n_override = 0;
    bool dedupe = false;
    std::int64_t m_u = 0;  // 0: use all
    std::string out_dir;
};

void cmd_quantify(const QuantifyArgs& a, Manifest& manifest) {
    CascadeSet cs = load_cascades_arg(a.cascades, a.format, a.n_override, a.dedupe);
    if (a.m_u > 0) cs = take_prefix(cs, static_cast<std::size_t>(a.m_u));
    const QuantifyResult q = quantify(cs);
    const InteractionNetwork net = build_network(q.matrix);

    ensure_dir(a.out_dir);
    const fs::path dir = a.out_dir;
    write_quantify_dir(dir, q);

    ordered_json report;
    report["n"] = q.counts.n();
    report["m_used"] = q.counts.m_used;
    report["links"] = net.links.size();
    const std::size_t possible =
        static_cast<std::size_t>(q.counts.n()) * (q.counts.n() ? q.counts.n() - 1 : 0);
    report["link_ratio"] =
        possible ? static_cast<double>(net.links.size()) / static_cast<double>(possible) : 0.0;
    report["indistinguishable_ratio"] = q.indistinguishable_ratio;
    report["lambda_hat"] = estimate_lambda(cs);
    write_text_file(dir / "report.json", report.dump(2) + "\n");

    for (const char* name :
         {"header.json", "A.csv", "A_prime.csv", "B.csv", "N.csv", "N0.csv", "tau.csv",
          "report.json"})
        manifest.outputs.push_back((dir / name).string());
    manifest.counts["m_used"] = q.counts.m_used;
    manifest.counts["links"] = net.links.size();
}

// ----------------------------------------------------------------- analyze

struct AnalyzeArgs {
    std::string quant_dir;
    double epsilon_l = 0.15;
    double epsilon_s = 0.15;
    std::string mode = "total";
    std::string out_dir;
};

WeightMode parse_mode(const std::string& mode) {
    if (mode == "total") return WeightMode::total;
    if (mode == "gen0") return WeightMode::gen0;
    throw ValidationError("unknown weight mode '" + mode + "' (expected total or gen0)");
}

void cmd_analyze(const AnalyzeArgs& a, Manifest& manifest) {
    const QuantifyResult q = read_quantify_dir(a.quant_dir);
    const InteractionNetwork net = build_network(q.matrix);
    if (net.links.empty()) throw ValidationError("the quantified network has no links");
    const WeightMode mode = parse_mode(a.mode);
    const auto weighted = weigh_links(net, q.counts, mode);

    std::size_t multi_parent_total = 0;
    for (const Link& l : net.links)
        multi_parent_total += layered_subgraph(net, l).multi_parent_children;

    const auto keys = key_links(weighted, a.epsilon_l);
    const VertexStrengths s = strengths(net.n, weighted);
    const auto key_comps = key_components(s.out, a.epsilon_s);

    double total_weight = 0.0, key_weight = 0.0, max_weight = 0.0;
    for (const auto& w : weighted) {
        total_weight += w.weight;
        max_weight = std::max(max_weight, w.weight);
    }
    for (const auto& k : keys) key_weight += k.weight;
    double max_strength = 0.0;
    for (double v : s.out) max_strength = std::max(max_strength, v);

    ensure_dir(a.out_dir);
    const fs::path dir = a.out_dir;
    write_weighted_links_csv(dir / "weighted_links.csv", weighted);

    {
        std::string table = "i,out_strength,in_strength\n";
        for (ComponentId i = 0; i < net.n; ++i)
            table += std::to_string(i) + ',' + format_double(s.out[i]) + ',' +
                     format_double(s.in[i]) + '\n';
        write_text_file(dir / "strengths.csv", table);
    }

    {
        std::vector<double> weights;
        for (const auto& w : weighted) weights.push_back(w.weight);
        const std::size_t possible = static_cast<std::size_t>(net.n) * (net.n - 1);
        write_ccdf_csv(dir / "link_weight_ccdf.csv", ccdf_points(weights, possible));
        write_ccdf_csv(dir / "out_strength_ccdf.csv", ccdf_points(s.out, net.n));
    }

    ordered_json report;
    report["mode"] = a.mode;
    report["links"] = weighted.size();
    report["epsilon_l"] = a.epsilon_l;
    report["max_link_weight"] = max_weight;
    report["link_weight_threshold"] = a.epsilon_l * max_weight;
    ordered_json key_links_json = ordered_json::array();
    for (std::size_t r = 0; r < keys.size(); ++r)
        key_links_json.push_back({{"rank", r + 1},
                                  {"i", keys[r].source},
                                  {"j", keys[r].target},
                                  {"b", keys[r].probability},
                                  {"weight", keys[r].weight}});
    report["key_links"] = std::move(key_links_json);
    report["key_link_share"] = format_percent(keys.size(), weighted.size());
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f%%",
                      total_weight > 0.0 ? 100.0 * key_weight / total_weight : 0.0);
        report["key_link_weight_share"] = buf;
    }
    report["epsilon_s"] = a.epsilon_s;
    report["max_out_strength"] = max_strength;
    report["out_strength_threshold"] = a.epsilon_s * max_strength;
    ordered_json key_comp_json = ordered_json::array();
    for (std::size_t r = 0; r < key_comps.size(); ++r)
        key_comp_json.push_back(
            {{"rank", r + 1}, {"i", key_comps[r]}, {"out_strength", s.out[key_comps[r]]}});
    report["key_components"] = std::move(key_comp_json);
    report["key_component_share"] = format_percent(key_comps.size(), net.n);
    report["multi_parent_children_total"] = multi_parent_total;
    if (mode == WeightMode::gen0)
        report["network_propagation_capacity"] =
            network_propagation_capacity(weighted, q.counts.m_used);
    write_text_file(dir / "report.json", report.dump(2) + "\n");

    for (const char* name : {"weighted_links.csv", "strengths.csv", "link_weight_ccdf.csv",
                             "out_strength_ccdf.csv", "report.json"})
        manifest.outputs.push_back((dir / name).string());
    manifest.counts["links"] = weighted.size();
    manifest.counts["key_links"] = keys.size();
    manifest.counts["key_components"] = key_comps.size();
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string matrix;
    std::string tau;
    std::int64_t count = 1000;
    std::uint64_t seed = 0;
    std::uint32_t streams = 1;
    std::string out;
    std::string format = "json";
    std::string plan;
    std::string report;
    // efficiency comparison inputs; R is reported when all are set
    double t1_seconds = 0.0;
    double quant_seconds = 0.0;
    std::int64_t n_sets = 0;
    std::int64_t m_u = 0;
};

MitigationPlan load_plan(const fs::path& path) {
    const ordered_json doc = parse_json_file(path);
    MitigationPlan plan;
    try {
        plan.weaken = doc.at("weaken").get<double>();
        for (const auto& pair : doc.at("links")) {
            if (!pair.is_array() || pair.size() != 2)
                throw ValidationError(path.string() + ": each link must be a [i, j] pair");
            plan.links.emplace_back(pair[0].get<ComponentId>(), pair[1].get<ComponentId>());
        }
    } catch (const ordered_json::exception& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
    return plan;
}

void cmd_simulate(const SimulateArgs& a, Manifest& manifest) {
    InteractionMatrix m = read_matrix_and_tau(a.matrix, a.tau);
    if (!a.plan.empty()) m = apply_mitigation(m, load_plan(a.plan));

    SimConfig cfg;
    cfg.m_max = a.count;
    cfg.seed = a.seed;
    cfg.streams = a.streams;
    const auto t0 = std::chrono::steady_clock::now();
    const SimResult r = simulate(m, cfg);
    const double sim_seconds = seconds_since(t0);

    save_cascades(r.cascades, a.out, parse_cascade_format(a.format));
    manifest.outputs.push_back(a.out);
    manifest.counts["cascades"] = r.cascades.size();
    manifest.counts["discarded_empty_gen0"] = r.discarded_empty;

    if (!a.report.empty()) {
        ordered_json report;
        report["cascades"] = r.cascades.size();
        report["discarded_empty_gen0"] = r.discarded_empty;
        report["lambda_hat"] = estimate_lambda(r.cascades);
        report["total_outages"] = distribution_json(outage_distribution(r.cascades));
        report["initial_outages"] = distribution_json(initial_outage_distribution(r.cascades));
        if (a.t1_seconds > 0.0 && a.n_sets > 0 && a.m_u > 0) {
            // value of reusing one quantified matrix across n_sets studies
            // instead of regenerating cascades from scratch each time
            const double t2 = sim_seconds / static_cast<double>(r.cascades.size());
            const double n_m = static_cast<double>(a.n_sets * a.count);
            const double ratio = n_m * a.t1_seconds /
                                 (static_cast<double>(a.m_u) * a.t1_seconds + a.quant_seconds +
                                  n_m * t2);
            report["efficiency"] = {{"ratio", ratio},
                                    {"t1_seconds", a.t1_seconds},
                                    {"t2_seconds", t2},
                                    {"quantify_seconds", a.quant_seconds},
                                    {"n_sets", a.n_sets},
                                    {"m_u", a.m_u}};
        }
        write_text_file(a.report, report.dump(2) + "\n");
        manifest.outputs.push_back(a.report);
    }
}

// ---------------------------------------------------------------- mitigate

struct MitigateArgs {
    std::string quant_dir;
    std::int64_t count = 10000;
    int reps = 20;
    std::uint64_t seed = 0;
    std::uint32_t streams = 1;
    double epsilon_l = 0.15;
    double weaken = 0.9;
    std::string mode = "total";
    std::string out_dir;
};

void cmd_mitigate(const MitigateArgs& a, Manifest& manifest) {
    if (a.reps < 1) throw ValidationError("need at least one repetition");
    const QuantifyResult q = read_quantify_dir(a.quant_dir);
    const InteractionNetwork net = build_network(q.matrix);
    if (net.links.empty()) throw ValidationError("the quantified network has no links");
    const auto weighted = weigh_links(net, q.counts, parse_mode(a.mode));
    const auto keys = key_links(weighted, a.epsilon_l);

    MitigationPlan intentional;
    intentional.weaken = a.weaken;
    for (const auto& k : keys) intentional.links.emplace_back(k.source, k.target);
    std::sort(intentional.links.begin(), intentional.links.end());
    const InteractionMatrix weakened = apply_mitigation(q.matrix, intentional);

    // Seed layout, all off the master seed: 0 baseline, then per repetition
    // r the intentional run, the random plan draw and the random run.
    const std::uint64_t base_seed = derive_seed(a.seed, 0);
    const std::uint64_t int_seed = derive_seed(a.seed, 1);
    const std::uint64_t plan_seed = derive_seed(a.seed, 2);
    const std::uint64_t rand_seed = derive_seed(a.seed, 3);

    auto run = [&](const InteractionMatrix& m, std::uint64_t seed) {
        SimConfig cfg;
        cfg.m_max = a.count;
        cfg.seed = seed;
        cfg.streams = a.streams;
        return estimate_lambda(simulate(m, cfg).cascades);
    };

    const double baseline = run(q.matrix, base_seed);

    std::vector<double> lambda_int, lambda_rand, rand_weights;
    ordered_json random_plans = ordered_json::array();
    for (int rep = 0; rep < a.reps; ++rep) {
        lambda_int.push_back(run(weakened, derive_seed(int_seed, rep)));

        Rng plan_rng(derive_seed(plan_seed, rep));
        const MitigationPlan rp = random_plan(weighted, keys.size(), a.weaken, plan_rng);
        rand_weights.push_back(plan_weight(rp, weighted));
        lambda_rand.push_back(run(apply_mitigation(q.matrix, rp), derive_seed(rand_seed, rep)));
        ordered_json links = ordered_json::array();
        for (const auto& l : rp.links) links.push_back({l.first, l.second});
        random_plans.push_back(std::move(links));
    }

    ensure_dir(a.out_dir);
    const fs::path dir = a.out_dir;

    {
        ordered_json plan_doc;
        ordered_json links = ordered_json::array();
        for (const auto& l : intentional.links) links.push_back({l.first, l.second});
        plan_doc["links"] = std::move(links);
        plan_doc["weaken"] = a.weaken;
        write_text_file(dir / "intentional_plan.json", plan_doc.dump(2) + "\n");
    }

    ordered_json report;
    report["key_links"] = keys.size();
    report["weaken"] = a.weaken;
    report["repetitions"] = a.reps;
    report["cascades_per_run"] = a.count;
    report["baseline_lambda"] = baseline;
    report["intentional"] = {{"lambda_mean", mean(lambda_int)},
                             {"lambda_stddev", sample_stddev(lambda_int)},
                             {"lambda_per_rep", lambda_int},
                             {"plan_weight", plan_weight(intentional, weighted)}};
    report["random"] = {{"lambda_mean", mean(lambda_rand)},
                        {"lambda_stddev", sample_stddev(lambda_rand)},
                        {"lambda_per_rep", lambda_rand},
                        {"plan_weight_mean", mean(rand_weights)},
                        {"plan_weight_stddev", sample_stddev(rand_weights)},
                        {"plan_weights", rand_weights},
                        {"plans", std::move(random_plans)}};
    write_text_file(dir / "report.json", report.dump(2) + "\n");

    manifest.outputs.push_back((dir / "intentional_plan.json").string());
    manifest.outputs.push_back((dir / "report.json").string());
    manifest.counts["key_links"] = keys.size();
    manifest.parameters["seed_layout"] =
        "master -> 0 baseline, 1 intentional rep, 2 random plan, 3 random rep";
}

// -------------------------------------------------------------- samplesize

struct SampleSizeArgs {
    std::string cascades;
    std::string format = "json";
    std::int64_t n_override = 0;
    std::vector<std::size_t> grid;
    double theta = 0.01;
    double epsilon = 0.01;
    std::size_t step_up = 1000;
    std::size_t step_down = 100;
    std::size_t start = 100;
    bool skip_m_min = false;
    bool skip_mu_min = false;
    std::string out_dir;
};

std::vector<std::size_t> default_grid(std::size_t m) {
    // geometric sweep up to half the data, then a short linear tail
    std::vector<std::size_t> grid;
    for (std::size_t g = std::max<std::size_t>(1, m / 256); g < m / 2; g *= 2)
        grid.push_back(g);
    grid.push_back(m / 2);
    grid.push_back(3 * m / 4);
    grid.push_back(m);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

void cmd_samplesize(const SampleSizeArgs& a, Manifest& manifest) {
    const CascadeSet cs = load_cascades_arg(a.cascades, a.format, a.n_override, false);
    if (cs.size() == 0) throw ValidationError("no cascades to work with");

    ensure_dir(a.out_dir);
    const fs::path dir = a.out_dir;
    ordered_json report;
    ordered_json warnings = ordered_json::array();

    if (!a.skip_m_min) {
        const auto grid = a.grid.empty() ? default_grid(cs.size()) : a.grid;
        const LinkCountCurve curve = link_count_curve(cs, grid);
        std::string table = "m,links,sigma\n";
        for (std::size_t k = 0; k < curve.grid.size(); ++k) {
            table += std::to_string(curve.grid[k]) + ',' +
                     std::to_string(curve.link_counts[k]) + ',';
            if (k < curve.sigmas.size()) table += format_double(curve.sigmas[k]);
            table += '\n';
        }
        write_text_file(dir / "link_curve.csv", table);
        manifest.outputs.push_back((dir / "link_curve.csv").string());

        const MMinResult m_min = find_m_min(curve, a.theta);
        report["m_min"] = m_min.m_min;
        report["m_min_links"] = curve.link_counts[m_min.grid_index];
        report["max_links_on_grid"] =
            *std::max_element(curve.link_counts.begin(), curve.link_counts.end());
        report["theta"] = a.theta;
        report["grid"] = curve.grid;
    }

    if (!a.skip_mu_min) {
        MuSearchParams params;
        params.epsilon = a.epsilon;
        params.step_up = a.step_up;
        params.step_down = a.step_down;
        params.start = a.start;
        const MuSearchTrace trace = find_mu_min(cs, params);

        std::string table = "m_u,pc_original,pc_network,delta,indistinguishable_ratio,satisfied\n";
        for (const auto& probe : trace.visited)
            table += std::to_string(probe.m_u) + ',' + format_double(probe.result.pc_original) +
                     ',' + format_double(probe.result.pc_network) + ',' +
                     format_double(probe.result.delta) + ',' +
                     format_double(probe.result.indistinguishable_ratio) + ',' +
                     (probe.result.satisfied ? "1" : "0") + '\n';
        write_text_file(dir / "mu_trace.csv", table);
        manifest.outputs.push_back((dir / "mu_trace.csv").string());

        report["mu_min"] = trace.result;
        report["epsilon"] = a.epsilon;
        report["step_up"] = a.step_up;
        report["step_down"] = a.step_down;
        report["start"] = a.start;
        report["down_steps"] = trace.down_steps;
        report["unnecessary_cascades"] = trace.unnecessary_cascades;
        report["stopped_at_floor"] = trace.stopped_at_floor;
        if (trace.stopped_at_floor)
            warnings.push_back(
                "descent reached the starting point while the mismatch condition still "
                "held; the true minimum may be smaller");
    }

    report["warnings"] = std::move(warnings);
    write_text_file(dir / "report.json", report.dump(2) + "\n");
    manifest.outputs.push_back((dir / "report.json").string());
}

// ---------------------------------------------------------------- validate

struct ValidateArgs {
    std::string original;
    std::string original_format = "json";
    std::string simulated;
    std::string simulated_format = "json";
    std::int64_t n_override = 0;
    std::string out_dir;
};

void cmd_validate(const ValidateArgs& a, Manifest& manifest) {
    const CascadeSet ori = load_cascades_arg(a.original, a.original_format, a.n_override, false);
    const CascadeSet sim =
        load_cascades_arg(a.simulated, a.simulated_format, a.n_override, false);
    if (ori.n_components != sim.n_components)
        throw ValidationError("original and simulated sets disagree on n_components");

    const OutageDistribution d_ori = outage_distribution(ori);
    const OutageDistribution d_sim = outage_distribution(sim);
    const DistributionComparison cmp = compare_distributions(d_ori, d_sim);

    const QuantifyResult q_ori = quantify(ori);
    const QuantifyResult q_sim = quantify(sim);
    const auto w_ori = weigh_links(build_network(q_ori.matrix), q_ori.counts, WeightMode::total);
    const auto w_sim = weigh_links(build_network(q_sim.matrix), q_sim.counts, WeightMode::total);
    // bring the simulated weights onto the original cascade count before
    // comparing
    const LinkWeights weights_sim = normalize_weights(
        to_weight_map(w_sim), q_sim.counts.m_used, q_ori.counts.m_used);
    const SimilarityReport sim_rep = similarity(to_weight_map(w_ori), weights_sim);

    ensure_dir(a.out_dir);
    const fs::path dir = a.out_dir;

    const ComponentId n = ori.n_components;
    const std::size_t possible = static_cast<std::size_t>(n) * (n ? n - 1 : 0);
    auto weights_of = [](const std::vector<WeightedLink>& w) {
        std::vector<double> v;
        for (const auto& x : w) v.push_back(x.weight);
        return v;
    };
    write_ccdf_csv(dir / "totals_original_ccdf.csv",
                   [&] {
                       std::vector<double> v;
                       for (const auto& c : ori.cascades)
                           v.push_back(static_cast<double>(c.total_failures()));
                       return ccdf_points(v, v.size());
                   }());
    write_ccdf_csv(dir / "totals_simulated_ccdf.csv",
                   [&] {
                       std::vector<double> v;
                       for (const auto& c : sim.cascades)
                           v.push_back(static_cast<double>(c.total_failures()));
                       return ccdf_points(v, v.size());
                   }());
    write_ccdf_csv(dir / "link_weights_original_ccdf.csv",
                   ccdf_points(weights_of(w_ori), possible));
    write_ccdf_csv(dir / "link_weights_simulated_ccdf.csv",
                   ccdf_points(weights_of(w_sim), possible));

    ordered_json report;
    report["m_original"] = ori.size();
    report["m_simulated"] = sim.size();
    report["lambda_original"] = estimate_lambda(ori);
    report["lambda_simulated"] = estimate_lambda(sim);
    report["distributions_match"] = cmp.all_ok;
    ordered_json bins = ordered_json::array();
    for (const auto& bc : cmp.bins)
        bins.push_back({{"total", bc.bin},
                        {"p_original", bc.p_a},
                        {"p_simulated", bc.p_b},
                        {"standard_error", bc.standard_error},
                        {"ok", bc.ok}});
    report["distribution_bins"] = std::move(bins);
    report["initial_outages_original"] = distribution_json(initial_outage_distribution(ori));
    report["initial_outages_simulated"] = distribution_json(initial_outage_distribution(sim));
    report["similarity"] = similarity_json(sim_rep);
    report["links_original"] = w_ori.size();
    report["links_simulated"] = w_sim.size();
    write_text_file(dir / "report.json", report.dump(2) + "\n");

    for (const char* name :
         {"totals_original_ccdf.csv", "totals_simulated_ccdf.csv",
          "link_weights_original_ccdf.csv", "link_weights_simulated_ccdf.csv", "report.json"})
        manifest.outputs.push_back((dir / name).string());
    manifest.counts["distributions_match"] = cmp.all_ok;
}

// ------------------------------------------------------------------- rerun

int cmd_rerun(const std::string& manifest_path) {
    const ordered_json doc = parse_json_file(manifest_path);
    std::vector<std::string> argv;
    try {
        argv = doc.at("argv").get<std::vector<std::string>>();
    } catch (const ordered_json::exception& e) {
        throw ValidationError(std::string("manifest: ") + e.what());
    }
    if (argv.empty()) throw ValidationError("manifest holds no command line");
    if (argv.front() == "rerun") throw ValidationError("refusing to rerun a rerun");
    return run_cli(argv);
}

// ---------------------------------------------------------------- plumbing

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"interaction model toolkit: quantify component interactions from failure "
                 "cascades, analyze and simulate them"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand(
        "generate", "synthesize a known system and draw cascades from it");
    generate->add_option("--kind", gen.kind, "chain, tree or random-sparse");
    generate->add_option("--n", gen.n, "number of components")->check(CLI::PositiveNumber);
    generate->add_option("--density", gen.density, "link probability (random-sparse)");
    generate->add_option("--b-min", gen.b_min, "lower bound for link probabilities");
    generate->add_option("--b-max", gen.b_max, "upper bound for link probabilities");
    generate->add_option("--tau-min", gen.tau_min, "lower bound for initial-outage rates");
    generate->add_option("--tau-max", gen.tau_max, "upper bound for initial-outage rates");
    generate->add_option("--system-seed", gen.system_seed, "seed for drawing the system");
    generate->add_option("--seed", gen.seed, "seed for drawing the cascades");
    generate->add_option("--count", gen.count, "cascades to draw")->check(CLI::PositiveNumber);
    generate->add_option("--streams", gen.streams, "parallel draw streams");
    generate->add_option("--out", gen.out, "cascade file to write")->required();
    generate->add_option("--format", gen.format, "json or csv");
    generate->add_option("--truth-dir", gen.truth_dir, "also write the true B and tau here");

    QuantifyArgs qa;
    auto* quant = app.add_subcommand(
        "quantify", "estimate the interaction matrix from recorded cascades");
    quant->add_option("--cascades", qa.cascades, "cascade file")->required();
    quant->add_option("--format", qa.format, "json or csv");
    quant->add_option("--n", qa.n_override, "component count override (csv input)");
    quant->add_flag("--dedupe", qa.dedupe, "keep first occurrence of repeated failures");
    quant->add_option("--m-u", qa.m_u, "use only the first m_u cascades");
    quant->add_option("--out-dir", qa.out_dir, "directory for matrices and report")
        ->required();

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand(
        "analyze", "weigh links, rank key links and key components");
    analyze->add_option("--quant-dir", an.quant_dir, "directory written by quantify")
        ->required();
    analyze->add_option("--epsilon-l", an.epsilon_l, "key-link threshold fraction");
    analyze->add_option("--epsilon-s", an.epsilon_s, "key-component threshold fraction");
    analyze->add_option("--mode", an.mode, "source failures feeding weights: total or gen0");
    analyze->add_option("--out-dir", an.out_dir, "directory for tables and report")
        ->required();

    SimulateArgs sa;
    auto* sim = app.add_subcommand("simulate", "draw cascades from an interaction matrix");
    sim->add_option("--matrix", sa.matrix, "B triplet csv")->required();
    sim->add_option("--tau", sa.tau, "tau vector csv")->required();
    sim->add_option("--count", sa.count, "cascades to draw")->check(CLI::PositiveNumber);
    sim->add_option("--seed", sa.seed, "master seed");
    sim->add_option("--streams", sa.streams, "parallel draw streams");
    sim->add_option("--out", sa.out, "cascade file to write")->required();
    sim->add_option("--format", sa.format, "json or csv");
    sim->add_option("--plan", sa.plan, "mitigation plan to apply first");
    sim->add_option("--report", sa.report, "also write summary statistics here");
    sim->add_option("--t1-seconds", sa.t1_seconds,
                    "per-cascade cost of the reference generator (efficiency report)");
    sim->add_option("--quant-seconds", sa.quant_seconds,
                    "one-off quantification cost (efficiency report)");
    sim->add_option("--n-sets", sa.n_sets, "study count for the efficiency report");
    sim->add_option("--m-u", sa.m_u, "cascades behind the matrix (efficiency report)");

    MitigateArgs ma;
    auto* mit = app.add_subcommand(
        "mitigate", "compare weakening key links against random links");
    mit->add_option("--quant-dir", ma.quant_dir, "directory written by quantify")->required();
    mit->add_option("--count", ma.count, "cascades per run")->check(CLI::PositiveNumber);
    mit->add_option("--reps", ma.reps, "repetitions per arm");
    mit->add_option("--seed", ma.seed, "master seed");
    mit->add_option("--streams", ma.streams, "parallel draw streams");
    mit->add_option("--epsilon-l", ma.epsilon_l, "key-link threshold fraction");
    mit->add_option("--weaken", ma.weaken, "fraction removed from each chosen link");
    mit->add_option("--mode", ma.mode, "weight mode for ranking: total or gen0");
    mit->add_option("--out-dir", ma.out_dir, "directory for the report")->required();

    SampleSizeArgs ss;
    auto* samplesize = app.add_subcommand(
        "samplesize", "how many cascades saturate the network and suffice for matching");
    samplesize->add_option("--cascades", ss.cascades, "cascade file")->required();
    samplesize->add_option("--format", ss.format, "json or csv");
    samplesize->add_option("--n", ss.n_override, "component count override (csv input)");
    samplesize->add_option("--grid", ss.grid, "saturation grid, comma separated")
        ->delimiter(',');
    samplesize->add_option("--theta", ss.theta, "tail-deviation bound fraction");
    samplesize->add_option("--epsilon", ss.epsilon, "mismatch tolerance fraction");
    samplesize->add_option("--step-up", ss.step_up, "coarse ascent step");
    samplesize->add_option("--step-down", ss.step_down, "fine descent step");
    samplesize->add_option("--start", ss.start, "search starting point");
    samplesize->add_flag("--skip-m-min", ss.skip_m_min, "skip the saturation curve");
    samplesize->add_flag("--skip-mu-min", ss.skip_mu_min, "skip the mismatch search");
    samplesize->add_option("--out-dir", ss.out_dir, "directory for traces and report")
        ->required();

    ValidateArgs va;
    auto* validate_cmd = app.add_subcommand(
        "validate", "compare simulated cascades against the originals");
    validate_cmd->add_option("--original", va.original, "original cascade file")->required();
    validate_cmd->add_option("--original-format", va.original_format, "json or csv");
    validate_cmd->add_option("--simulated", va.simulated, "simulated cascade file")
        ->required();
    validate_cmd->add_option("--simulated-format", va.simulated_format, "json or csv");
    validate_cmd->add_option("--n", va.n_override, "component count override (csv input)");
    validate_cmd->add_option("--out-dir", va.out_dir, "directory for tables and report")
        ->required();

    std::string manifest_path;
    auto* rerun = app.add_subcommand("rerun", "replay a command from its manifest");
    rerun->add_option("--manifest", manifest_path, "manifest file")->required();

    std::vector<const char*> argv;
    argv.push_back("imodel");
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    Manifest manifest;
    manifest.argv = args;

    if (rerun->parsed()) return cmd_rerun(manifest_path);

    fs::path manifest_out;
    if (generate->parsed()) {
        manifest.command = "generate";
        cmd_generate(gen, manifest);
        manifest_out = gen.out + ".manifest.json";
    } else if (quant->parsed()) {
        manifest.command = "quantify";
        cmd_quantify(qa, manifest);
        manifest_out = fs::path(qa.out_dir) / "manifest.json";
    } else if (analyze->parsed()) {
        manifest.command = "analyze";
        cmd_analyze(an, manifest);
        manifest_out = fs::path(an.out_dir) / "manifest.json";
    } else if (sim->parsed()) {
        manifest.command = "simulate";
        cmd_simulate(sa, manifest);
        manifest_out = sa.out + ".manifest.json";
    } else if (mit->parsed()) {
        manifest.command = "mitigate";
        cmd_mitigate(ma, manifest);
        manifest_out = fs::path(ma.out_dir) / "manifest.json";
    } else if (samplesize->parsed()) {
        manifest.command = "samplesize";
        cmd_samplesize(ss, manifest);
        manifest_out = fs::path(ss.out_dir) / "manifest.json";
    } else if (validate_cmd->parsed()) {
        manifest.command = "validate";
        cmd_validate(va, manifest);
        manifest_out = fs::path(va.out_dir) / "manifest.json";
    }

    manifest.elapsed_seconds = seconds_since(t0);
    manifest.write(manifest_out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return run_cli(args);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
