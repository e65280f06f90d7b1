// spm: overlapping community detection in signed networks.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spm/datasets.hpp"
#include "spm/eval.hpp"
#include "spm/experiments.hpp"
#include "spm/generator.hpp"
#include "spm/graph.hpp"
#include "spm/model.hpp"
#include "spm/serialize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitFitFailure = 4;

struct GraphSource {
    std::string input;
    std::string dataset;
    std::string format = "edgelist";
};

struct FitFlags {
    std::size_t k = 2;
    std::size_t restarts = 10;
    std::size_t max_iter = 1000;
    double tol = 1e-8;
    std::uint64_t seed = 0;
    std::size_t workers = 1;

    spm::FitConfig config() const {
        spm::FitConfig cfg;
        cfg.communities = k;
        cfg.restarts = restarts;
        cfg.max_iter = max_iter;
        cfg.rel_tol = tol;
        cfg.seed = seed;
        cfg.workers = workers;
        return cfg;
    }
};

void add_source(CLI::App* sub, GraphSource& src) {
    sub->add_option("--input", src.input, "graph file");
    sub->add_option("--dataset", src.dataset, "bundled dataset name instead of --input");
    sub->add_option("--format", src.format, "input format")->check(CLI::IsMember({"edgelist", "adjacency"}));
}

void add_fit_flags(CLI::App* sub, FitFlags& f, bool with_k) {
    if (with_k) sub->add_option("--k", f.k, "number of communities");
    sub->add_option("--restarts", f.restarts, "independent EM restarts");
    sub->add_option("--max-iter", f.max_iter, "iteration cap per restart");
    sub->add_option("--tol", f.tol, "relative log-likelihood tolerance");
    sub->add_option("--seed", f.seed, "base random seed");
    sub->add_option("--workers", f.workers, "threads for restarts");
}

spm::SignedGraph load_graph(const GraphSource& src) {
    if (!src.dataset.empty()) {
        if (!src.input.empty()) throw spm::PreconditionError("give either --input or --dataset, not both");
        return spm::bundled_dataset(src.dataset).graph;
    }
    if (src.input.empty()) throw spm::PreconditionError("--input or --dataset is required");
    const std::string text = spm::read_file(src.input);
    try {
        if (src.format == "adjacency") return spm::from_adjacency(spm::parse_adjacency_csv(text));
        return spm::load_edge_list(text);
    } catch (const spm::GraphError& ex) {
        throw spm::GraphError(src.input + ": " + ex.what());
    }
}

// Options of the invoked subcommand, defaults included, in declaration order.
json collect_options(const CLI::App* sub) {
    json options = json::object();
    for (const CLI::Option* opt : sub->get_options()) {
        const std::string name = opt->get_name();
        if (name == "--help" || name == "-h") continue;
        std::string value;
        if (opt->count() > 0) {
            for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
        } else {
            value = opt->get_default_str();
        }
        std::string key = name;
        if (key.rfind("--", 0) == 0) key = key.substr(2);
        options[key] = value;
    }
    return options;
}

class OutputDir {
public:
    OutputDir(std::string path, const CLI::App* sub) : path_(std::move(path)) {
        fs::create_directories(path_);
        manifest_["tool"] = "spm";
        manifest_["version"] = "0.1.0";
        manifest_["command"] = sub->get_name();
        manifest_["options"] = collect_options(sub);
        manifest_["files"] = json::array();
    }

    void write(const std::string& name, const std::string& content) {
        const fs::path file = fs::path(path_) / name;
        std::ofstream out(file, std::ios::binary);
        if (!out) throw std::ios_base::failure("cannot write " + file.string());
        out << content;
        if (!out) throw std::ios_base::failure("cannot write " + file.string());
        manifest_["files"].push_back(name);
    }

    // The manifest is written last so it lists every output.
    void finish() {
        manifest_["files"].push_back("manifest.json");
        const fs::path file = fs::path(path_) / "manifest.json";
        std::ofstream out(file, std::ios::binary);
        out << manifest_.dump(2) << "\n";
        if (!out) throw std::ios_base::failure("cannot write " + file.string());
    }

private:
    std::string path_;
    json manifest_;
};

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw spm::PreconditionError("bad value '" + item + "' in --values");
        }
    }
    return out;
}

std::string fmt(double v, int digits = 6) { return spm::format_fixed(v, digits); }

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Signed probabilistic mixture model: overlapping communities in signed networks"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    std::string out_dir = "spm_out";

    // detect
    GraphSource detect_src;
    FitFlags detect_fit;
    double threshold = spm::kDefaultOverlapThreshold;
    auto* detect = app.add_subcommand("detect", "fit the model and write memberships");
    add_source(detect, detect_src);
    add_fit_flags(detect, detect_fit, true);
    detect->add_option("--threshold", threshold, "overlap threshold on the second-largest membership");
    detect->add_option("--output-dir", out_dir, "directory for result files");

    // generate
    std::size_t gen_c = 4;
    std::size_t gen_size = 30;
    std::vector<std::size_t> gen_sizes;
    double gen_p_in = 0.8, gen_p_plus = 0.0, gen_p_minus = 0.0;
    std::size_t gen_degree = 16;
    std::uint64_t gen_seed = 0;
    auto* generate = app.add_subcommand("generate", "draw a synthetic signed network with planted communities");
    generate->add_option("--communities", gen_c, "number of equal communities");
    generate->add_option("--size", gen_size, "nodes per community");
    generate->add_option("--sizes", gen_sizes, "explicit community sizes (overrides --communities/--size)")
        ->delimiter(',');
    generate->add_option("--degree", gen_degree, "target degree");
    generate->add_option("--p-in", gen_p_in, "probability a stub stays inside its community");
    generate->add_option("--p-plus", gen_p_plus, "probability a cross edge is positive");
    generate->add_option("--p-minus", gen_p_minus, "probability an inside edge is negative");
    generate->add_option("--seed", gen_seed, "random seed");
    generate->add_option("--output-dir", out_dir, "directory for result files");

    // eval
    GraphSource eval_src;
    std::string truth_path, found_path;
    double eval_eta = 0.5;
    auto* eval = app.add_subcommand("eval", "compare a found partition with the truth");
    add_source(eval, eval_src);
    eval->add_option("--truth", truth_path, "label file `node label`")->required();
    eval->add_option("--found", found_path, "label file `node label`")->required();
    eval->add_option("--eta", eval_eta, "weight of negative links in the error criterion");
    eval->add_option("--output-dir", out_dir, "directory for result files");

    // sweep-k
    GraphSource sweep_src;
    FitFlags sweep_fit;
    std::size_t k_min = 2, k_max = 6;
    double sweep_eta = 0.5;
    auto* sweep_k = app.add_subcommand("sweep-k", "choose K by the error criterion");
    add_source(sweep_k, sweep_src);
    add_fit_flags(sweep_k, sweep_fit, false);
    sweep_k->add_option("--k-min", k_min, "smallest K");
    sweep_k->add_option("--k-max", k_max, "largest K");
    sweep_k->add_option("--eta", sweep_eta, "weight of negative links in the error criterion");
    sweep_k->add_option("--output-dir", out_dir, "directory for result files");

    // robustness
    std::string axis_name = "p_in";
    std::string values_text;
    std::size_t rob_replicates = 30;
    FitFlags rob_fit;
    std::size_t rob_c = 4, rob_size = 30, rob_degree = 16;
    double rob_p_in = 0.8, rob_p_plus = 0.0, rob_p_minus = 0.0;
    auto* robustness = app.add_subcommand("robustness", "mean NMI of synthetic networks along a parameter axis");
    robustness->add_option("--axis", axis_name, "p_in, p_plus, p_minus or joint");
    robustness->add_option("--values", values_text, "comma-separated axis values (default: axis grid)");
    robustness->add_option("--replicates", rob_replicates, "instances per point");
    robustness->add_option("--communities", rob_c, "number of equal communities");
    robustness->add_option("--size", rob_size, "nodes per community");
    robustness->add_option("--degree", rob_degree, "target degree");
    robustness->add_option("--p-in", rob_p_in, "template p_in");
    robustness->add_option("--p-plus", rob_p_plus, "template p_plus");
    robustness->add_option("--p-minus", rob_p_minus, "template p_minus");
    add_fit_flags(robustness, rob_fit, false);
    robustness->add_option("--output-dir", out_dir, "directory for result files");

    // reproduce
    std::string experiment;
    spm::ExperimentOptions xopts;
    auto* reproduce = app.add_subcommand("reproduce", "run a bundled experiment and check its thresholds");
    std::string names;
    for (const auto n : spm::experiment_names()) names += (names.empty() ? "" : ", ") + std::string(n);
    reproduce->add_option("experiment", experiment, "one of: " + names)->required();
    reproduce->add_option("--replicates", xopts.replicates, "instances per robustness point");
    reproduce->add_option("--instances", xopts.instances, "fresh instances per fixed synthetic network");
    reproduce->add_option("--restarts", xopts.restarts, "independent EM restarts");
    reproduce->add_option("--max-iter", xopts.max_iter, "iteration cap per restart");
    reproduce->add_option("--tol", xopts.rel_tol, "relative log-likelihood tolerance");
    reproduce->add_option("--seed", xopts.seed, "base random seed");
    reproduce->add_option("--eta", xopts.eta, "weight of negative links in the error criterion");
    reproduce->add_option("--threshold", xopts.threshold, "overlap threshold");
    reproduce->add_option("--workers", xopts.workers, "threads for restarts");
    reproduce->add_option("--output-dir", out_dir, "directory for result files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitIo;
    }

    if (detect->parsed()) {
        const spm::SignedGraph g = load_graph(detect_src);
        const spm::FitResult fitted = spm::fit(g, detect_fit.config());
        const spm::OverlapReport overlap = spm::overlap_nodes(fitted.alpha, threshold);
        OutputDir out(out_dir, detect);
        out.write("fit.json", spm::fit_to_json(fitted).dump(2) + "\n");
        out.write("memberships.csv", spm::membership_csv(fitted.alpha, g));
        out.write("overlap.json", spm::overlap_to_json(overlap, fitted.alpha, g).dump(2) + "\n");
        out.finish();
        std::string nodes;
        for (const auto i : overlap.nodes) nodes += (nodes.empty() ? "" : " ") + g.label(i);
        std::printf("n=%zu l+=%zu l-=%zu K=%zu log_likelihood=%s iterations=%zu converged=%s\n", g.node_count(),
                    g.positive_count(), g.negative_count(), detect_fit.k, fmt(fitted.log_likelihood).c_str(),
                    fitted.iterations, fitted.converged ? "true" : "false");
        std::printf("overlapping (threshold %s): %s\n", fmt(threshold, 2).c_str(), nodes.empty() ? "-" : nodes.c_str());
        return kExitOk;
    }

    if (generate->parsed()) {
        spm::SyntheticSpec spec = spm::SyntheticSpec::uniform(gen_c, gen_size, gen_degree, gen_p_in, gen_p_plus,
                                                              gen_p_minus, gen_seed);
        if (!gen_sizes.empty()) spec.sizes = gen_sizes;
        const spm::SyntheticGraph sg = spm::generate(spec);
        OutputDir out(out_dir, generate);
        out.write("graph.txt", "# " + spec.name() + " seed " + std::to_string(spec.seed) + "\n" +
                                   spm::write_edge_list(sg.graph));
        out.write("truth.labels", spm::write_label_file(sg.truth, sg.graph));
        out.finish();
        std::printf("%s: n=%zu l+=%zu l-=%zu ground_truth=%s\n", spec.name().c_str(), sg.graph.node_count(),
                    sg.graph.positive_count(), sg.graph.negative_count(), sg.has_ground_truth ? "true" : "false");
        return kExitOk;
    }

    if (eval->parsed()) {
        const spm::SignedGraph g = load_graph(eval_src);
        const spm::Partition truth = spm::parse_label_file(spm::read_file(truth_path), g);
        const spm::Partition found = spm::parse_label_file(spm::read_file(found_path), g);
        const spm::NmiReport report = spm::nmi(truth, found);
        const double accuracy = spm::node_accuracy(truth, found);
        const spm::CriterionPoint crit = spm::error_criterion(g, found, eval_eta);
        json j;
        j["nmi"] = {{"mi", report.mi}, {"h_truth", report.h_truth}, {"h_found", report.h_found}, {"nmi", report.nmi}};
        j["node_accuracy"] = accuracy;
        j["criterion"] = {{"K", crit.communities}, {"p_c", crit.p_c}, {"n_count", crit.n_count},
                          {"p_count", crit.p_count}, {"eta", crit.eta}};
        OutputDir out(out_dir, eval);
        out.write("eval.json", j.dump(2) + "\n");
        out.finish();
        std::printf("nmi=%s accuracy=%s p_c=%s\n", fmt(report.nmi).c_str(), fmt(accuracy).c_str(),
                    fmt(crit.p_c, 4).c_str());
        return kExitOk;
    }

    if (sweep_k->parsed()) {
        const spm::SignedGraph g = load_graph(sweep_src);
        const spm::SelectKResult result = spm::select_k(g, k_min, k_max, sweep_eta, sweep_fit.config());
        std::string mdl = "K,log_likelihood,mdl\n";
        json j;
        j["optimal"] = result.optimal;
        j["optima_agree"] = result.optima_agree();
        auto curve = json::array();
        for (const auto& p : result.curve) {
            json point{{"K", p.communities}};
            if (p.criterion) {
                point["p_c"] = p.criterion->p_c;
                point["n_count"] = p.criterion->n_count;
                point["p_count"] = p.criterion->p_count;
                point["log_likelihood"] = p.log_likelihood;
                point["mdl"] = p.mdl;
                mdl += std::to_string(p.communities) + "," + fmt(p.log_likelihood) + "," + fmt(p.mdl) + "\n";
            } else {
                point["error"] = p.error;
            }
            curve.push_back(point);
        }
        j["curve"] = curve;
        OutputDir out(out_dir, sweep_k);
        out.write("criterion.csv", spm::criterion_csv(result));
        out.write("mdl.csv", mdl);
        out.write("select_k.json", j.dump(2) + "\n");
        out.finish();
        std::string optimal;
        for (const auto k : result.optimal) optimal += (optimal.empty() ? "" : " ") + std::to_string(k);
        std::printf("optimal K: %s (partitions %s)\n", optimal.empty() ? "-" : optimal.c_str(),
                    result.optima_agree() ? "agree" : "differ");
        return kExitOk;
    }

    if (robustness->parsed()) {
        const spm::SweepAxis axis = spm::parse_sweep_axis(axis_name);
        std::vector<double> values;
        if (!values_text.empty()) {
            values = parse_values(values_text);
        } else if (axis == spm::SweepAxis::p_in) {
            for (int v = 1; v <= 19; ++v) values.push_back(v * 0.05);
        } else {
            for (int v = 0; v <= 5; ++v) values.push_back(v * 0.1);
        }
        spm::SyntheticSpec base = spm::SyntheticSpec::uniform(rob_c, rob_size, rob_degree, rob_p_in, rob_p_plus,
                                                              rob_p_minus, rob_fit.seed);
        const auto curve = spm::robustness_curve(base, axis, values, rob_replicates, rob_fit.config());
        OutputDir out(out_dir, robustness);
        const std::string csv = spm::robustness_csv(curve, axis);
        out.write("robustness.csv", csv);
        out.finish();
        std::fputs(csv.c_str(), stdout);
        return kExitOk;
    }

    if (reproduce->parsed()) {
        const spm::ExperimentReport report = spm::run_experiment(experiment, xopts);
        OutputDir out(out_dir, reproduce);
        for (const auto& [name, content] : report.files) out.write(name, content);
        out.write("report.json", report.to_json().dump(2) + "\n");
        out.finish();
        for (const auto& c : report.checks) {
            std::printf("%s  %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
        }
        std::printf("%s: %s\n", experiment.c_str(), report.passed() ? "all checks passed" : "some checks failed");
        return kExitOk;
    }
    return kExitOk;
}

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const spm::FitFailure& ex) {
        std::fprintf(stderr, "spm: fit failed: %s\n", ex.what());
        return kExitFitFailure;
    } catch (const spm::PreconditionError& ex) {
        std::fprintf(stderr, "spm: %s\n", ex.what());
        return kExitPrecondition;
    } catch (const spm::DatasetUnavailable& ex) {
        std::fprintf(stderr, "spm: %s\n", ex.what());
        return kExitIo;
    } catch (const spm::GraphError& ex) {
        std::fprintf(stderr, "spm: parse error: %s\n", ex.what());
        return kExitIo;
    } catch (const std::ios_base::failure& ex) {
        std::fprintf(stderr, "spm: %s\n", ex.what());
        return kExitIo;
    } catch (const fs::filesystem_error& ex) {
        std::fprintf(stderr, "spm: %s\n", ex.what());
        return kExitIo;
    } catch (const nlohmann::json::exception& ex) {
        std::fprintf(stderr, "spm: %s\n", ex.what());
        return kExitIo;
    } catch (const std::invalid_argument& ex) {
        std::fprintf(stderr, "spm: %s\n", ex.what());
        return kExitPrecondition;
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "spm: %s\n", ex.what());
        return 1;
    }
}
