#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "textnet/commands.hpp"
#include "textnet/cooccur.hpp"
#include "textnet/earlywarn.hpp"
#include "textnet/error.hpp"
#include "textnet/metrics.hpp"
#include "textnet/netbuild.hpp"
#include "textnet/pipeline.hpp"
#include "textnet/synth.hpp"

namespace py = pybind11;
using namespace textnet;

namespace {

CrossSectionNetwork make_network(const std::string& period, std::vector<std::string> nodes, const Eigen::MatrixXd& w) {
    validate_weights(w);
    if (static_cast<Eigen::Index>(nodes.size()) != w.rows()) throw InputError("node count does not match the weight matrix");
    return {parse_period(period), std::move(nodes), w};
}

ComponentPolicy parse_policy(const std::string& s) {
    if (s == "strict") return ComponentPolicy::strict;
    if (s == "largest_component") return ComponentPolicy::largest_component;
    throw InputError("unknown component policy '" + s + "'");
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

py::dict outcome_dict(const EvalOutcome& o) {
    py::dict d;
    d["lambda"] = o.lambda;
    d["tp"] = o.counts.tp;
    d["fp"] = o.counts.fp;
    d["fn"] = o.counts.fn;
    d["tn"] = o.counts.tn;
    d["t1"] = o.rates.t1;
    d["t2"] = o.rates.t2;
    d["loss"] = o.loss;
    d["ua"] = o.use.absolute;
    d["ur"] = o.use.relative ? py::object(py::float_(*o.use.relative)) : py::object(py::none());
    d["auc"] = o.auc;
    return d;
}

} // namespace

PYBIND11_MODULE(_textnet, m) {
    m.doc() = "Co-occurrence networks from text and network-based early-warning evaluation.";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

    py::class_<PatternMatcher>(m, "PatternMatcher")
        .def(py::init([](const std::string& json_text) { return PatternMatcher(parse_patterns(json_text)); }),
             py::arg("config_json"))
        .def_static("load", [](const std::filesystem::path& p) { return PatternMatcher(load_patterns(p)); })
        .def_property_readonly("labels", &PatternMatcher::labels)
        .def("scan",
             [](const PatternMatcher& self, const std::string& text) {
                 std::vector<std::tuple<std::string, std::size_t, std::size_t>> out;
                 for (const auto& o : self.scan(text)) out.emplace_back(self.entities()[o.entity].label, o.offset, o.length);
                 return out;
             },
             py::arg("text"), "Mentions as (label, offset, length) in code points, sorted by offset.")
        .def("relations",
             [](const PatternMatcher& self, const std::string& text, std::size_t window, std::size_t max_entities,
                bool dedupe) {
                 ContextParams params{window, max_entities, dedupe};
                 params.validate();
                 std::vector<std::pair<std::string, std::string>> out;
                 for (const auto& r : extract(text, self, params))
                     out.emplace_back(self.entities()[r.pair.first].label, self.entities()[r.pair.second].label);
                 return out;
             },
             py::arg("text"), py::arg("window") = 400, py::arg("max_entities") = 5, py::arg("dedupe_per_article") = false);

    py::class_<CrossSectionNetwork>(m, "Network")
        .def(py::init(&make_network), py::arg("period"), py::arg("nodes"), py::arg("weights"))
        .def_property_readonly("period", [](const CrossSectionNetwork& n) { return to_label(n.period); })
        .def_readonly("nodes", &CrossSectionNetwork::nodes)
        .def_readonly("weights", &CrossSectionNetwork::weights)
        .def("total_weight", &CrossSectionNetwork::total_weight)
        .def("__repr__", [](const CrossSectionNetwork& n) {
            return "<Network " + to_label(n.period) + " nodes=" + std::to_string(n.size()) + ">";
        });

    m.def(
        "build_networks",
        [](const std::filesystem::path& corpus, const std::filesystem::path& patterns, std::size_t window,
           std::size_t max_entities, bool dedupe, const std::string& period, double sample, std::uint64_t seed,
           unsigned threads) {
            PipelineOptions opts;
            opts.context = {window, max_entities, dedupe};
            opts.period_kind = parse_period_kind(period);
            opts.sample = {sample, seed};
            opts.threads = threads;
            const PatternMatcher matcher(load_patterns(patterns));
            py::gil_scoped_release release;
            return build_dynamic(corpus, matcher, opts).networks();
        },
        py::arg("corpus"), py::arg("patterns"), py::arg("window") = 400, py::arg("max_entities") = 5,
        py::arg("dedupe_per_article") = false, py::arg("period") = "quarter", py::arg("sample") = 1.0,
        py::arg("seed") = 0, py::arg("threads") = 0, "Scans a JSONL corpus into one network per period, gaps included.");

    m.def(
        "smooth", [](const CrossSectionNetwork& n, double alpha) { return smooth(n, {alpha}); }, py::arg("network"),
        py::arg("alpha") = 1.0);
    m.def(
        "information_centrality",
        [](const Eigen::MatrixXd& w, const std::string& components) {
            validate_weights(w);
            InformationCentralityOptions opts;
            opts.components = parse_policy(components);
            return information_centrality_detail(w, opts).values;
        },
        py::arg("weights"), py::arg("components") = "strict");
    m.def("strength", [](const CrossSectionNetwork& n) { return strength(n); });
    m.def("shortest_paths", &shortest_paths);
    m.def("closeness", &closeness);
    m.def("betweenness", &betweenness);
    m.def("avg_binary_distance", &avg_binary_distance, py::arg("network"), py::arg("min_weight") = 0.0);

    m.def(
        "centrality_panel",
        [](const std::vector<CrossSectionNetwork>& nets, double alpha, const std::string& components) {
            const auto p = centrality_panel(nets, alpha, parse_policy(components));
            py::dict d;
            std::vector<std::string> periods;
            for (const auto& q : p.periods) periods.push_back(to_label(q));
            d["periods"] = periods;
            d["nodes"] = p.nodes;
            d["values"] = p.values;
            d["normalized"] = p.normalized;
            d["flat"] = p.flat;
            return d;
        },
        py::arg("networks"), py::arg("alpha") = 1.0, py::arg("components") = "largest_component");
    m.def("variance_over_time", &variance_over_time, py::arg("normalized"));
    m.def("variance_across_nodes", &variance_across_nodes, py::arg("normalized"));

    m.def(
        "fit_logit",
        [](const Eigen::MatrixXd& x, const std::vector<int>& labels) {
            const auto f = fit_logit(x, labels);
            py::dict d;
            d["coefficients"] = to_vector(f.coefficients);
            d["probabilities"] = f.probabilities;
            d["log_likelihood"] = f.log_likelihood;
            d["iterations"] = f.iterations;
            d["converged"] = f.converged;
            d["separation"] = f.separation;
            return d;
        },
        py::arg("x"), py::arg("labels"), "Logistic regression with an intercept added as the first coefficient.");
    m.def(
        "fit_ols",
        [](const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
            const auto f = fit_ols(x, y);
            py::dict d;
            d["coefficients"] = to_vector(f.coefficients);
            d["robust_se"] = to_vector(f.robust_se);
            d["r_squared"] = f.r_squared;
            return d;
        },
        py::arg("x"), py::arg("y"));
    m.def(
        "auc", [](const std::vector<double>& p, const std::vector<int>& c) { return auc(p, c); }, py::arg("p"),
        py::arg("labels"));
    m.def(
        "optimize_threshold",
        [](const std::vector<double>& p, const std::vector<int>& c, double mu) {
            Preferences prefs{mu};
            prefs.validate();
            return optimize_threshold(p, c, prefs);
        },
        py::arg("p"), py::arg("labels"), py::arg("mu") = 0.9);
    m.def(
        "evaluate",
        [](const std::vector<double>& p, const std::vector<int>& c, double mu) {
            Preferences prefs{mu};
            prefs.validate();
            return outcome_dict(evaluate(p, c, prefs));
        },
        py::arg("p"), py::arg("labels"), py::arg("mu") = 0.9);

    m.def(
        "generate_synthetic",
        [](const std::filesystem::path& spec, const std::filesystem::path& out) {
            std::ostringstream log;
            const auto r = cmd_synth(spec, out, log);
            py::dict expected;
            for (const auto& [key, count] : r.expected) {
                const auto& [period, a, b] = key;
                expected[py::make_tuple(period, a, b)] = count;
            }
            return py::make_tuple(r.articles, expected);
        },
        py::arg("spec"), py::arg("out_dir"),
        "Writes corpus.jsonl, patterns.json and expected_counts.csv; returns (articles, planted counts).");
}
