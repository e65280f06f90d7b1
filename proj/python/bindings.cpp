#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "spm/datasets.hpp"
#include "spm/eval.hpp"
#include "spm/experiments.hpp"
#include "spm/generator.hpp"
#include "spm/graph.hpp"
#include "spm/model.hpp"
#include "spm/serialize.hpp"

namespace py = pybind11;
using namespace spm;

namespace {

std::vector<std::vector<double>> rows_of(const Matrix& m) {
    std::vector<std::vector<double>> out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) out[r].assign(m.row(r).begin(), m.row(r).end());
    return out;
}

std::vector<std::size_t> labels_of(const Partition& p) { return {p.assignment().begin(), p.assignment().end()}; }

py::object truth_or_none(const std::optional<Partition>& p) {
    if (!p) return py::none();
    return py::cast(labels_of(*p));
}

std::string json_text(const nlohmann::json& j) { return j.dump(); }

// JSON objects cross the boundary as text and are decoded with the stdlib.
py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(json_text(j)); }

FitConfig make_config(std::size_t k, std::size_t restarts, std::size_t max_iter, double tol, std::uint64_t seed,
                      std::size_t workers) {
    FitConfig cfg;
    cfg.communities = k;
    cfg.restarts = restarts;
    cfg.max_iter = max_iter;
    cfg.rel_tol = tol;
    cfg.seed = seed;
    cfg.workers = workers;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_spm, m) {
    m.doc() = "Signed network mixture model: fitting, synthetic networks and evaluation";

    static py::exception<PreconditionError> precondition(m, "PreconditionError", PyExc_ValueError);
    static py::exception<GraphError> graph_error(m, "GraphError", PyExc_ValueError);
    static py::exception<DatasetUnavailable> unavailable(m, "DatasetUnavailable", PyExc_LookupError);
    static py::exception<FitFailure> fit_failure(m, "FitFailure", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const PreconditionError& e) {
            py::set_error(precondition, e.what());
        } catch (const GraphError& e) {
            py::set_error(graph_error, e.what());
        } catch (const DatasetUnavailable& e) {
            py::set_error(unavailable, e.what());
        } catch (const FitFailure& e) {
            py::set_error(fit_failure, e.what());
        }
    });

    py::class_<SignedGraph>(m, "SignedGraph")
        .def_property_readonly("node_count", &SignedGraph::node_count)
        .def_property_readonly("edge_count", &SignedGraph::edge_count)
        .def_property_readonly("positive_count", &SignedGraph::positive_count)
        .def_property_readonly("negative_count", &SignedGraph::negative_count)
        .def_property_readonly("labels",
                               [](const SignedGraph& g) { return std::vector<std::string>(g.labels().begin(), g.labels().end()); })
        .def("edges",
             [](const SignedGraph& g) {
                 std::vector<std::tuple<std::size_t, std::size_t, double>> out;
                 for (const auto& e : g.edges()) out.emplace_back(e.i, e.j, e.signed_weight());
                 return out;
             },
             "(i, j, signed weight) triples with i < j")
        .def("to_edge_list", &write_edge_list)
        .def("__repr__", [](const SignedGraph& g) {
            return "<SignedGraph n=" + std::to_string(g.node_count()) + " l+=" + std::to_string(g.positive_count()) +
                   " l-=" + std::to_string(g.negative_count()) + ">";
        });

    m.def("load_edge_list", [](const std::string& text) { return load_edge_list(text); }, py::arg("text"),
          "Parse `u v w` lines; the sign of w is the sign of the edge.");
    m.def("read_graph", [](const std::string& path) { return load_edge_list(read_file(path)); }, py::arg("path"));
    m.def("dataset_names", [] {
        std::vector<std::string> out;
        for (const auto n : dataset_names()) out.emplace_back(n);
        return out;
    });
    m.def("dataset_available", [](const std::string& name) { return dataset_available(parse_dataset(name)); });
    m.def(
        "dataset",
        [](const std::string& name) {
            const Dataset d = bundled_dataset(name);
            return py::make_tuple(d.graph, truth_or_none(d.truth));
        },
        py::arg("name"), "Bundled network as (graph, ground-truth labels or None).");

    py::class_<FitResult>(m, "FitResult")
        .def_property_readonly("k", [](const FitResult& f) { return f.params.omega.rows(); })
        .def_readonly("log_likelihood", &FitResult::log_likelihood)
        .def_readonly("iterations", &FitResult::iterations)
        .def_readonly("converged", &FitResult::converged)
        .def_readonly("trace", &FitResult::trace)
        .def_readonly("restart_log_likelihoods", &FitResult::restart_log_likelihoods)
        .def_property_readonly("omega", [](const FitResult& f) { return rows_of(f.params.omega); })
        .def_property_readonly("theta", [](const FitResult& f) { return rows_of(f.params.theta); })
        .def_property_readonly("alpha", [](const FitResult& f) { return rows_of(f.alpha.alpha); })
        .def_property_readonly("assignment", [](const FitResult& f) { return labels_of(f.partition()); })
        .def("to_json", [](const FitResult& f) { return json_text(fit_to_json(f)); })
        .def("__repr__", [](const FitResult& f) {
            return "<FitResult K=" + std::to_string(f.params.omega.rows()) +
                   " log_likelihood=" + format_fixed(f.log_likelihood, 4) + ">";
        });

    m.def(
        "fit",
        [](const SignedGraph& g, std::size_t k, std::size_t restarts, std::size_t max_iter, double tol,
           std::uint64_t seed, std::size_t workers) {
            const FitConfig cfg = make_config(k, restarts, max_iter, tol, seed, workers);
            py::gil_scoped_release release;
            return fit(g, cfg);
        },
        py::arg("graph"), py::arg("k"), py::arg("restarts") = 10, py::arg("max_iter") = 1000, py::arg("tol") = 1e-8,
        py::arg("seed") = 0, py::arg("workers") = 1);

    m.def(
        "overlap_nodes",
        [](const FitResult& f, double threshold) { return overlap_nodes(f.alpha, threshold).nodes; }, py::arg("fit"),
        py::arg("threshold") = kDefaultOverlapThreshold);

    m.def(
        "nmi",
        [](const std::vector<std::size_t>& truth, const std::vector<std::size_t>& found) {
            return nmi(Partition::from_labels(truth), Partition::from_labels(found)).nmi;
        },
        py::arg("truth"), py::arg("found"));
    m.def(
        "node_accuracy",
        [](const std::vector<std::size_t>& truth, const std::vector<std::size_t>& found) {
            return node_accuracy(Partition::from_labels(truth), Partition::from_labels(found));
        },
        py::arg("truth"), py::arg("found"));
    m.def(
        "error_criterion",
        [](const SignedGraph& g, const std::vector<std::size_t>& labels, double eta) {
            const CriterionPoint c = error_criterion(g, Partition::from_labels(labels), eta);
            py::dict d;
            d["p_c"] = c.p_c;
            d["n_count"] = c.n_count;
            d["p_count"] = c.p_count;
            d["eta"] = c.eta;
            return d;
        },
        py::arg("graph"), py::arg("labels"), py::arg("eta") = 0.5);

    m.def(
        "generate",
        [](const std::vector<std::size_t>& sizes, std::size_t degree, double p_in, double p_plus, double p_minus,
           std::uint64_t seed) {
            const SyntheticGraph sg = generate(SyntheticSpec{sizes, degree, p_in, p_plus, p_minus, seed});
            return py::make_tuple(sg.graph, labels_of(sg.truth));
        },
        py::arg("sizes"), py::arg("degree") = 16, py::arg("p_in") = 0.8, py::arg("p_plus") = 0.0,
        py::arg("p_minus") = 0.0, py::arg("seed") = 0, "Synthetic network as (graph, planted labels).");

    m.def(
        "select_k",
        [](const SignedGraph& g, std::size_t k_min, std::size_t k_max, double eta, std::size_t restarts,
           std::uint64_t seed) {
            FitConfig cfg = make_config(k_min, restarts, 1000, 1e-8, seed, 1);
            SelectKResult r;
            {
                py::gil_scoped_release release;
                r = select_k(g, k_min, k_max, eta, cfg);
            }
            py::list curve;
            for (const auto& p : r.curve) {
                py::dict d;
                d["k"] = p.communities;
                d["p_c"] = p.criterion ? py::cast(p.criterion->p_c) : py::none();
                d["log_likelihood"] = p.log_likelihood;
                d["mdl"] = p.mdl;
                d["error"] = p.error;
                curve.append(d);
            }
            py::dict out;
            out["curve"] = curve;
            out["optimal"] = r.optimal;
            out["optima_agree"] = r.optima_agree();
            return out;
        },
        py::arg("graph"), py::arg("k_min"), py::arg("k_max"), py::arg("eta") = 0.5, py::arg("restarts") = 10,
        py::arg("seed") = 0);

    m.def("experiment_names", [] {
        std::vector<std::string> out;
        for (const auto n : experiment_names()) out.emplace_back(n);
        return out;
    });
    m.def(
        "run_experiment",
        [](const std::string& name, std::size_t restarts, std::size_t instances, std::size_t replicates,
           std::uint64_t seed, std::size_t workers) {
            ExperimentOptions opts;
            opts.restarts = restarts;
            opts.instances = instances;
            opts.replicates = replicates;
            opts.seed = seed;
            opts.workers = workers;
            ExperimentReport r;
            {
                py::gil_scoped_release release;
                r = run_experiment(name, opts);
            }
            return to_python(r.to_json());
        },
        py::arg("name"), py::arg("restarts") = 20, py::arg("instances") = 5, py::arg("replicates") = 30,
        py::arg("seed") = 0, py::arg("workers") = 1, "Run a named experiment; returns its report as a dict.");
}
