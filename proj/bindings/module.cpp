// Python face of the library. Sparse matrices cross the boundary as
// (i, j, value) triplets, link weights as {(i, j): weight} dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "imodel/cascade.hpp"
#include "imodel/cascade_io.hpp"
#include "imodel/errors.hpp"
#include "imodel/network.hpp"
#include "imodel/quantify.hpp"
#include "imodel/rng.hpp"
#include "imodel/sample_size.hpp"
#include "imodel/simulate.hpp"
#include "imodel/stats.hpp"
#include "imodel/synthetic.hpp"

namespace py = pybind11;
using namespace imodel;

namespace {

using Triplet = std::tuple<ComponentId, ComponentId, double>;

std::vector<Triplet> prob_triplets(const ProbMatrix& m) {
    std::vector<Triplet> out;
    m.for_each([&](ComponentId i, ComponentId j, double v) { out.emplace_back(i, j, v); });
    return out;
}

std::vector<std::tuple<ComponentId, ComponentId, std::int64_t>> count_triplets(
    const CountMatrix& m) {
    std::vector<std::tuple<ComponentId, ComponentId, std::int64_t>> out;
    m.for_each([&](ComponentId i, ComponentId j, std::int64_t v) { out.emplace_back(i, j, v); });
    return out;
}

InteractionMatrix matrix_from_links(ComponentId n, const std::vector<Triplet>& links,
                                    const std::vector<double>& tau) {
    if (tau.size() != n) throw ValidationError("tau length must equal n");
    InteractionMatrix m;
    m.b = ProbMatrix(n);
    m.tau = tau;
    m.m_used = 0;
    for (const auto& [i, j, v] : links) m.b.set(i, j, v);
    return m;
}

WeightMode mode_from_string(const std::string& mode) {
    if (mode == "total") return WeightMode::total;
    if (mode == "gen0") return WeightMode::gen0;
    throw ValidationError("unknown weight mode '" + mode + "' (expected total or gen0)");
}

MitigationPlan plan_from_python(const std::vector<std::pair<ComponentId, ComponentId>>& links,
                                double weaken) {
    MitigationPlan plan;
    plan.links = links;
    plan.weaken = weaken;
    return plan;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quantify, analyze and simulate component interactions from failure cascades";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_IOError);

    py::class_<Cascade>(m, "Cascade")
        .def(py::init([](std::vector<std::vector<ComponentId>> generations) {
                 return Cascade{std::move(generations)};
             }),
             py::arg("generations"))
        .def_readwrite("generations", &Cascade::generations)
        .def_property_readonly("total_failures", &Cascade::total_failures)
        .def_property_readonly("propagated_failures", &Cascade::propagated_failures)
        .def("__repr__", [](const Cascade& c) {
            return "Cascade(" + std::to_string(c.generations.size()) + " generations, " +
                   std::to_string(c.total_failures()) + " failures)";
        });

    py::class_<CascadeSet>(m, "CascadeSet")
        .def(py::init([](ComponentId n_components, std::vector<Cascade> cascades) {
                 CascadeSet cs{n_components, std::move(cascades)};
                 validate(cs);
                 return cs;
             }),
             py::arg("n_components"), py::arg("cascades"))
        .def_readonly("n_components", &CascadeSet::n_components)
        .def_readonly("cascades", &CascadeSet::cascades)
        .def("__len__", &CascadeSet::size)
        .def("__repr__", [](const CascadeSet& cs) {
            return "CascadeSet(n=" + std::to_string(cs.n_components) + ", m=" +
                   std::to_string(cs.size()) + ")";
        });

    m.def("take_prefix", &take_prefix, py::arg("cascades"), py::arg("m_u"));
    m.def("dedupe_first", &dedupe_first, py::arg("cascades"),
          "Keep only the first occurrence of each component per cascade");

    m.def(
        "load_cascades",
        [](const std::filesystem::path& path, const std::string& format,
           std::optional<ComponentId> n_components, bool dedupe) {
            LoadOptions opts;
            opts.n_components = n_components;
            opts.dedupe_first = dedupe;
            return load_cascades(path, parse_cascade_format(format), opts);
        },
        py::arg("path"), py::arg("format") = "json", py::arg("n_components") = py::none(),
        py::arg("dedupe") = false);
    m.def(
        "save_cascades",
        [](const CascadeSet& cs, const std::filesystem::path& path, const std::string& format) {
            save_cascades(cs, path, parse_cascade_format(format));
        },
        py::arg("cascades"), py::arg("path"), py::arg("format") = "json");
    m.def("cascades_to_json", &cascades_to_json, py::arg("cascades"));
    m.def(
        "cascades_from_json",
        [](const std::string& text) { return cascades_from_json(text); }, py::arg("text"));

    py::class_<InteractionCounts>(m, "InteractionCounts")
        .def_readonly("n_total", &InteractionCounts::n_total)
        .def_readonly("n_gen0", &InteractionCounts::n_gen0)
        .def_readonly("m_used", &InteractionCounts::m_used)
        .def_property_readonly("n", &InteractionCounts::n)
        .def("a_items", [](const InteractionCounts& c) { return count_triplets(c.a); })
        .def("a_prime_items",
             [](const InteractionCounts& c) { return count_triplets(c.a_prime); });

    py::class_<InteractionMatrix>(m, "InteractionMatrix")
        .def_readonly("tau", &InteractionMatrix::tau)
        .def_readonly("m_used", &InteractionMatrix::m_used)
        .def_property_readonly("n", &InteractionMatrix::n)
        .def("b_items", [](const InteractionMatrix& m_) { return prob_triplets(m_.b); })
        .def(
            "b_at",
            [](const InteractionMatrix& m_, ComponentId i, ComponentId j) {
                return m_.b.get(i, j);
            },
            py::arg("i"), py::arg("j"))
        .def("__repr__", [](const InteractionMatrix& m_) {
            return "InteractionMatrix(n=" + std::to_string(m_.n()) + ", links=" +
                   std::to_string(m_.b.nonzero_count()) + ")";
        });

    m.def("matrix_from_links", &matrix_from_links, py::arg("n"), py::arg("links"),
          py::arg("tau"), "Build an interaction matrix from (i, j, b) triplets");

    py::class_<QuantifyResult>(m, "QuantifyResult")
        .def_readonly("counts", &QuantifyResult::counts)
        .def_readonly("matrix", &QuantifyResult::matrix)
        .def_readonly("indistinguishable_ratio", &QuantifyResult::indistinguishable_ratio);

    m.def("quantify", &quantify, py::arg("cascades"),
          "Estimate the interaction matrix from recorded cascades");

    py::class_<WeightedLink>(m, "WeightedLink")
        .def_readonly("source", &WeightedLink::source)
        .def_readonly("target", &WeightedLink::target)
        .def_readonly("probability", &WeightedLink::probability)
        .def_readonly("weight", &WeightedLink::weight)
        .def("__repr__", [](const WeightedLink& w) {
            return "WeightedLink(" + std::to_string(w.source) + " -> " +
                   std::to_string(w.target) + ", b=" + std::to_string(w.probability) +
                   ", weight=" + std::to_string(w.weight) + ")";
        });

    m.def(
        "weighted_links",
        [](const QuantifyResult& q, const std::string& mode) {
            return weigh_links(build_network(q.matrix), q.counts, mode_from_string(mode));
        },
        py::arg("quantified"), py::arg("mode") = "total",
        "All interaction links with their expected-failure weights");
    m.def("key_links", &key_links, py::arg("weighted"), py::arg("epsilon") = 0.15);
    m.def(
        "strengths",
        [](ComponentId n, const std::vector<WeightedLink>& weighted) {
            const VertexStrengths s = strengths(n, weighted);
            return py::make_tuple(s.out, s.in);
        },
        py::arg("n"), py::arg("weighted"), "Per-component (out, in) strength vectors");
    m.def("key_components", &key_components, py::arg("out_strength"),
          py::arg("epsilon") = 0.15);

    m.def(
        "simulate",
        [](const InteractionMatrix& matrix, std::int64_t count, std::uint64_t seed,
           std::uint32_t streams) {
            SimConfig cfg;
            cfg.m_max = count;
            cfg.seed = seed;
            cfg.streams = streams;
            const SimResult r = simulate(matrix, cfg);
            return py::make_tuple(r.cascades, r.discarded_empty);
        },
        py::arg("matrix"), py::arg("count"), py::arg("seed") = 0, py::arg("streams") = 1,
        "Draw cascades; returns (cascades, discarded_empty_gen0)");

    m.def(
        "apply_mitigation",
        [](const InteractionMatrix& matrix,
           const std::vector<std::pair<ComponentId, ComponentId>>& links, double weaken) {
            return apply_mitigation(matrix, plan_from_python(links, weaken));
        },
        py::arg("matrix"), py::arg("links"), py::arg("weaken") = 0.9,
        "Weaken the listed links: b <- (1 - weaken) * b");
    m.def(
        "random_plan",
        [](const std::vector<WeightedLink>& weighted, std::size_t k, double weaken,
           std::uint64_t seed) {
            Rng rng(seed);
            const MitigationPlan plan = random_plan(weighted, k, weaken, rng);
            return plan.links;
        },
        py::arg("weighted"), py::arg("k"), py::arg("weaken") = 0.9, py::arg("seed") = 0,
        "Pick k distinct links uniformly at random");

    m.def("estimate_lambda", &estimate_lambda, py::arg("cascades"),
          "Propagated failures over total failures");
    m.def(
        "outage_distribution",
        [](const CascadeSet& cs) { return outage_distribution(cs).probability; },
        py::arg("cascades"));
    m.def(
        "initial_outage_distribution",
        [](const CascadeSet& cs) { return initial_outage_distribution(cs).probability; },
        py::arg("cascades"));

    m.def("to_weight_map", &to_weight_map, py::arg("weighted"));
    m.def("normalize_weights", &normalize_weights, py::arg("weights"), py::arg("m_from"),
          py::arg("m_to"), "Rescale weights from one cascade count to another");
    m.def(
        "similarity",
        [](const LinkWeights& original, const LinkWeights& simulated) {
            const SimilarityReport r = similarity(original, simulated);
            py::dict d;
            d["s1"] = r.s1;
            d["s2"] = r.s2;
            d["s3"] = r.s3;
            d["s4"] = r.s4;
            d["s5"] = r.s5;
            d["shared_links"] = r.shared;
            d["original_only_links"] = r.original_only;
            d["simulated_only_links"] = r.simulated_only;
            return d;
        },
        py::arg("original"), py::arg("simulated"),
        "Weight-overlap indices between two link-weight maps");

    m.def(
        "ccdf",
        [](const std::vector<double>& values, std::size_t population) {
            std::vector<std::pair<double, double>> out;
            for (const CcdfPoint& p : ccdf_points(values, population))
                out.emplace_back(p.value, p.probability);
            return out;
        },
        py::arg("values"), py::arg("population"),
        "Complementary cumulative distribution points, binned beyond 32");

    m.def(
        "ground_truth_matrix",
        [](const std::string& kind, ComponentId n, double density, double b_min, double b_max,
           double tau_min, double tau_max, std::uint64_t seed) {
            GroundTruthSpec spec;
            spec.kind = parse_topology(kind);
            spec.n = n;
            spec.density = density;
            spec.b_min = b_min;
            spec.b_max = b_max;
            spec.tau_min = tau_min;
            spec.tau_max = tau_max;
            spec.seed = seed;
            return make_ground_truth(spec).matrix;
        },
        py::arg("kind"), py::arg("n"), py::arg("density") = 0.05, py::arg("b_min") = 0.2,
        py::arg("b_max") = 0.8, py::arg("tau_min") = 0.01, py::arg("tau_max") = 0.01,
        py::arg("seed") = 0, "Draw a synthetic system of known structure");

    m.def(
        "mismatch",
        [](const CascadeSet& cs, std::size_t m_u, double epsilon) {
            const MismatchResult r = mismatch(cs, m_u, epsilon);
            py::dict d;
            d["pc_original"] = r.pc_original;
            d["pc_network"] = r.pc_network;
            d["delta"] = r.delta;
            d["indistinguishable_ratio"] = r.indistinguishable_ratio;
            d["satisfied"] = r.satisfied;
            return d;
        },
        py::arg("cascades"), py::arg("m_u"), py::arg("epsilon") = 0.01,
        "Propagation-capacity mismatch of a quantification prefix");

    m.def(
        "find_m_min",
        [](const CascadeSet& cs, const std::vector<std::size_t>& grid, double theta) {
            const LinkCountCurve curve = link_count_curve(cs, grid);
            const MMinResult r = find_m_min(curve, theta);
            py::dict d;
            d["m_min"] = r.m_min;
            d["grid_index"] = r.grid_index;
            d["link_counts"] = curve.link_counts;
            d["sigmas"] = curve.sigmas;
            return d;
        },
        py::arg("cascades"), py::arg("grid"), py::arg("theta") = 0.01,
        "Smallest grid point where the link count has saturated");

    m.def(
        "find_mu_min",
        [](const CascadeSet& cs, double epsilon, std::size_t step_up, std::size_t step_down,
           std::size_t start) {
            MuSearchParams params;
            params.epsilon = epsilon;
            params.step_up = step_up;
            params.step_down = step_down;
            params.start = start;
            const MuSearchTrace t = find_mu_min(cs, params);
            py::dict d;
            d["mu_min"] = t.result;
            d["down_steps"] = t.down_steps;
            d["unnecessary_cascades"] = t.unnecessary_cascades;
            d["stopped_at_floor"] = t.stopped_at_floor;
            std::vector<std::pair<std::size_t, bool>> visited;
            for (const MuProbe& p : t.visited) visited.emplace_back(p.m_u, p.result.satisfied);
            d["visited"] = visited;
            return d;
        },
        py::arg("cascades"), py::arg("epsilon") = 0.01, py::arg("step_up") = 1000,
        py::arg("step_down") = 100, py::arg("start") = 100,
        "Smallest cascade count whose network matches the originals' propagation capacity");
}
