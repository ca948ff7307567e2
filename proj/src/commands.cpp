#include "textnet/commands.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "textnet/error.hpp"
#include "textnet/export.hpp"
#include "textnet/metrics.hpp"

namespace textnet {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

void require_file(const fs::path& p, std::string_view what) {
    if (p.empty()) throw InputError(std::string(what) + " path not given");
    if (!fs::exists(p)) throw InputError(std::string(what) + " '" + p.string() + "' does not exist");
}

std::vector<bool> gsib_flags(const std::vector<EntityPatternSet>& sets) {
    std::vector<bool> out;
    for (const auto& s : sets) out.push_back(s.gsib);
    return out;
}

std::string counts_csv(const DynamicNetworkBuilder& b) {
    std::ostringstream os;
    os << "period,source,target,count\n";
    for (const auto& [period, entry] : b.counts()) {
        const auto& [pair, c] = entry;
        os << to_label(period) << ',' << csv_escape(b.nodes()[pair.first]) << ',' << csv_escape(b.nodes()[pair.second])
           << ',' << c << '\n';
    }
    return os.str();
}

Extraction obtain_networks(const RunConfig& config, std::ostream& log) {
    if (!config.from.empty()) {
        log << "loading extraction from " << config.from.string() << "\n";
        return load_extraction(config.from);
    }
    auto dyn = cmd_extract(config, log);
    return {std::move(dyn.builder), gsib_flags(load_patterns(config.patterns))};
}

std::vector<CrossSectionNetwork> prepared(const Extraction& ex, double min_weight) {
    auto nets = ex.builder.networks();
    if (min_weight > 0.0)
        for (auto& n : nets) n = filter_weak_links(n, min_weight);
    return nets;
}

} // namespace

void RunConfig::validate() const {
    if (from.empty()) {
        require_file(patterns, "pattern file");
        require_file(corpus, "corpus");
    } else {
        require_file(from / "extract_summary.json", "extraction summary");
    }
    if (!(alpha >= 0.0)) throw InputError("alpha must be nonnegative");
    if (!(min_weight >= 0.0)) throw InputError("min-weight must be nonnegative");
    pipeline_options().context.validate();
    pipeline_options().sample.validate();
}

PipelineOptions RunConfig::pipeline_options() const {
    PipelineOptions o;
    o.context = {window, max_entities, dedupe_per_article};
    o.period_kind = period;
    o.sample = {sample, seed};
    o.threads = threads;
    return o;
}

DynamicNetwork cmd_extract(const RunConfig& config, std::ostream& log) {
    require_file(config.patterns, "pattern file");
    require_file(config.corpus, "corpus");
    config.validate();
    const auto sets = load_patterns(config.patterns);
    const PatternMatcher matcher(sets);
    fs::create_directories(config.out);

    std::ofstream audit;
    RelationSink sink;
    if (config.write_audit) {
        audit.open(config.out / "relations_audit.csv", std::ios::binary);
        if (!audit) throw Error("cannot write audit log in '" + config.out.string() + "'");
        audit << "article_id,period,source,target,span_start,span_end\n";
        sink = [&](const Article& a, const Period& p, const Relation& r) {
            audit << csv_escape(a.id) << ',' << to_label(p) << ',' << csv_escape(sets[r.pair.first].label) << ','
                  << csv_escape(sets[r.pair.second].label) << ',' << r.span_start << ',' << r.span_end << '\n';
        };
    }
    DynamicNetwork dyn = build_dynamic(config.corpus, matcher, config.pipeline_options(), sink);

    write_text_file(config.out / "relation_counts.csv", counts_csv(dyn.builder));
    json summary;
    summary["schema_version"] = kSchemaVersion;
    summary["period_kind"] = std::string(to_string(config.period));
    json periods = json::array();
    for (const auto& n : dyn.builder.networks()) periods.push_back(to_label(n.period));
    summary["periods"] = std::move(periods);
    summary["nodes"] = matcher.labels();
    summary["gsib"] = gsib_flags(sets);
    summary["window"] = config.window;
    summary["max_entities"] = config.max_entities;
    summary["dedupe_per_article"] = config.dedupe_per_article;
    summary["sample"] = config.sample;
    summary["seed"] = config.seed;
    summary["articles_read"] = dyn.stats.articles_read;
    summary["articles_sampled"] = dyn.stats.articles_sampled;
    summary["occurrences"] = dyn.stats.occurrences;
    summary["relations"] = dyn.stats.relations;
    write_text_file(config.out / "extract_summary.json", summary.dump(2) + "\n");

    log << "extract: " << dyn.stats.articles_read << " articles read, " << dyn.stats.articles_sampled << " sampled, "
        << dyn.stats.occurrences << " occurrences, " << dyn.stats.relations << " relations\n";
    return dyn;
}

Extraction load_extraction(const fs::path& dir) {
    const auto summary = nlohmann::json::parse(read_text_file(dir / "extract_summary.json"));
    const auto kind = parse_period_kind(summary.at("period_kind").get<std::string>());
    const auto nodes = summary.at("nodes").get<std::vector<std::string>>();
    Extraction ex{DynamicNetworkBuilder(nodes, kind), summary.at("gsib").get<std::vector<bool>>()};
    for (const auto& p : summary.at("periods")) ex.builder.touch(parse_period(p.get<std::string>()));

    std::ifstream in(dir / "relation_counts.csv");
    if (!in) throw InputError("cannot open '" + (dir / "relation_counts.csv").string() + "'");
    std::map<std::string, EntityIndex> index;
    for (EntityIndex i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 4) throw InputError("relation_counts.csv: malformed line '" + line + "'");
        auto a = index.find(f[1]), b = index.find(f[2]);
        if (a == index.end() || b == index.end()) throw InputError("relation_counts.csv: unknown entity in '" + line + "'");
        ex.builder.add(parse_period(f[0]), EntityPair::of(a->second, b->second), std::stoull(f[3]));
    }
    return ex;
}

std::vector<CrossSectionNetwork> cmd_network(const RunConfig& config, std::ostream& log) {
    config.validate();
    const Extraction ex = obtain_networks(config, log);
    const auto nets = prepared(ex, config.min_weight);
    fs::create_directories(config.out / "networks");

    const auto smoothed = centrality_panel(nets, config.alpha, ComponentPolicy::largest_component);
    const auto raw = centrality_panel(nets, 0.0, ComponentPolicy::largest_component);
    const std::vector<bool>& gsib = ex.gsib;

    json index;
    index["schema_version"] = kSchemaVersion;
    index["alpha"] = config.alpha;
    index["period_kind"] = std::string(to_string(ex.builder.kind()));
    index["panel"] = "centrality_panel.json";
    json periods = json::array();
    for (std::size_t t = 0; t < nets.size(); ++t) {
        const auto doc = make_document(nets[t], gsib, config.alpha, smoothed.values.row(t).transpose(),
                                       raw.values.row(t).transpose());
        const std::string file = "networks/" + doc.period + ".json";
        write_text_file(config.out / file, serialize(doc));
        periods.push_back({{"period", doc.period}, {"file", file}});
    }
    index["periods"] = std::move(periods);
    write_text_file(config.out / "index.json", index.dump(2) + "\n");
    write_text_file(config.out / "centrality_panel.json", serialize_panel(smoothed, raw, gsib));

    std::ostringstream csv;
    csv << "period,node,info_centrality,info_centrality_norm,info_centrality_raw,info_centrality_raw_norm\n";
    for (std::size_t t = 0; t < nets.size(); ++t) {
        for (std::size_t i = 0; i < smoothed.nodes.size(); ++i) {
            csv << to_label(smoothed.periods[t]) << ',' << csv_escape(smoothed.nodes[i]) << ','
                << format_double(smoothed.values(t, i)) << ',' << format_double(smoothed.normalized(t, i)) << ','
                << format_double(raw.values(t, i)) << ',' << format_double(raw.normalized(t, i)) << '\n';
        }
    }
    write_text_file(config.out / "centrality_panel.csv", csv.str());
    log << "network: " << nets.size() << " cross sections written to " << config.out.string() << "\n";
    return nets;
}

void cmd_metrics(const RunConfig& config, std::ostream& log) {
    config.validate();
    const Extraction ex = obtain_networks(config, log);
    const auto nets = prepared(ex, config.min_weight);
    const fs::path dir = config.out / "metrics";
    fs::create_directories(dir);

    InformationCentralityOptions ic;
    ic.components = ComponentPolicy::largest_component;
    std::ostringstream nodes, network;
    nodes << "period,node,strength,degree,closeness,betweenness,info_centrality,info_centrality_raw\n";
    network << "period,total_weight,links,avg_binary_distance\n";
    for (const auto& net : nets) {
        const std::string p = to_label(net.period);
        const auto s = strength(net);
        const auto d = degree(net, 0.0);
        const auto c = closeness(net);
        const auto b = betweenness(net);
        const auto smoothed = information_centrality(smooth(net, {config.alpha}), ic);
        const auto raw = information_centrality(net, ic);
        for (std::size_t i = 0; i < net.size(); ++i) {
            nodes << p << ',' << csv_escape(net.nodes[i]) << ',' << format_double(s[i]) << ',' << d[i] << ','
                  << format_double(c[i]) << ',' << format_double(b[i]) << ',' << format_double(smoothed[i]) << ','
                  << format_double(raw[i]) << '\n';
        }
        long links = 0;
        for (int k : d) links += k;
        std::string avg = "NA";
        try {
            avg = format_double(avg_binary_distance(net, 0.0));
        } catch (const InputError&) {
        }
        network << p << ',' << format_double(net.total_weight()) << ',' << links / 2 << ',' << avg << '\n';
    }
    write_text_file(dir / "node_metrics.csv", nodes.str());
    write_text_file(dir / "network_metrics.csv", network.str());

    std::ostringstream panel;
    panel << "alpha,variance_over_time,variance_across_nodes\n";
    for (double a : {0.0, config.alpha}) {
        const auto cp = centrality_panel(nets, a, ComponentPolicy::largest_component);
        panel << format_double(a) << ','
              << (cp.periods.size() >= 2 ? format_double(variance_over_time(cp.normalized)) : "NA") << ','
              << (cp.nodes.size() >= 2 && !cp.periods.empty() ? format_double(variance_across_nodes(cp.normalized)) : "NA")
              << '\n';
        if (a == config.alpha) break;
    }
    write_text_file(dir / "panel_summary.csv", panel.str());

    // Strength distribution of the network aggregated over the whole span.
    std::ostringstream fits;
    fits << "model,scale,rate,range_lo,range_hi,points,residual\n";
    if (!nets.empty()) {
        CrossSectionNetwork total = nets.front();
        for (std::size_t t = 1; t < nets.size(); ++t) total.weights += nets[t].weights;
        const auto points = strength_distribution(total);
        std::ostringstream dist;
        dist << "strength,p\n";
        for (const auto& pt : points) dist << format_double(pt.x) << ',' << format_double(pt.p) << '\n';
        write_text_file(dir / "strength_distribution.csv", dist.str());
        for (auto model : {DistributionModel::exponential, DistributionModel::power_law}) {
            const char* name = model == DistributionModel::exponential ? "exponential" : "power-law";
            try {
                const auto f = fit_distribution(points, model);
                fits << name << ',' << format_double(f.scale) << ',' << format_double(f.rate) << ','
                     << format_double(f.range_lo) << ',' << format_double(f.range_hi) << ',' << f.points << ','
                     << format_double(f.residual) << '\n';
            } catch (const InputError& e) {
                log << "metrics: " << name << " fit skipped: " << e.what() << "\n";
            }
        }
    }
    write_text_file(dir / "strength_fits.csv", fits.str());
    log << "metrics: " << nets.size() << " cross sections measured\n";
}

ModelSpec ModelSpec::parse(const std::string& text) {
    ModelSpec m;
    std::string body = text;
    if (auto eq = text.find('='); eq != std::string::npos) {
        m.name = text.substr(0, eq);
        body = text.substr(eq + 1);
    }
    std::size_t start = 0;
    while (start <= body.size()) {
        const auto plus = body.find('+', start);
        const auto f = body.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
        if (f.empty()) throw InputError("model spec '" + text + "' has an empty feature name");
        m.features.push_back(f);
        if (plus == std::string::npos) break;
        start = plus + 1;
    }
    if (m.name.empty()) m.name = body;
    return m;
}

std::vector<ModelReport> cmd_evaluate(const EvaluateConfig& config, std::ostream& log) {
    require_file(config.panel, "panel");
    if (config.models.empty()) throw InputError("no model specified");
    if (!(config.holdout >= 0.0 && config.holdout < 1.0)) throw InputError("holdout must lie in [0, 1)");
    const Preferences prefs{config.mu};
    prefs.validate();
    Panel panel = read_panel_csv(config.panel);
    if (!config.events.empty()) {
        require_file(config.events, "events file");
        panel = label_pre_distress(panel, read_events_csv(config.events), config.horizon, config.post_event);
    }
    for (const auto& m : config.models)
        for (const auto& f : m.features) panel.feature_index(f);

    std::vector<bool> test(panel.rows.size(), false);
    if (config.holdout > 0.0)
        for (std::size_t r = 0; r < panel.rows.size(); ++r)
            test[r] = stable_uniform(config.seed, panel.rows[r].entity + "|" + to_label(panel.rows[r].period)) <
                      config.holdout;

    std::vector<ModelReport> reports;
    for (const auto& m : config.models) {
        const Eigen::MatrixXd x = panel.design(m.features);
        const auto labels = panel.labels();
        std::vector<Eigen::Index> train_rows, eval_rows;
        for (std::size_t r = 0; r < labels.size(); ++r) {
            if (!test[r]) train_rows.push_back(static_cast<Eigen::Index>(r));
            if (config.holdout == 0.0 || test[r]) eval_rows.push_back(static_cast<Eigen::Index>(r));
        }
        auto take = [&](const std::vector<Eigen::Index>& rows, Eigen::MatrixXd& xs, std::vector<int>& ys) {
            xs.resize(static_cast<Eigen::Index>(rows.size()), x.cols());
            ys.clear();
            for (std::size_t k = 0; k < rows.size(); ++k) {
                xs.row(static_cast<Eigen::Index>(k)) = x.row(rows[k]);
                ys.push_back(labels[rows[k]]);
            }
        };
        Eigen::MatrixXd xtrain, xeval;
        std::vector<int> ytrain, yeval;
        take(train_rows, xtrain, ytrain);
        take(eval_rows, xeval, yeval);

        ModelReport rep;
        rep.model = m;
        rep.fit = fit_logit(xtrain, ytrain);
        Eigen::VectorXd eta = rep.fit.coefficients[0] + (xeval * rep.fit.coefficients.tail(x.cols())).array();
        std::vector<double> p(static_cast<std::size_t>(eta.size()));
        for (Eigen::Index i = 0; i < eta.size(); ++i) p[i] = 1.0 / (1.0 + std::exp(-eta[i]));
        rep.outcome = evaluate(p, yeval, prefs);
        rep.observations = yeval.size();
        rep.positives = static_cast<std::size_t>(std::count(yeval.begin(), yeval.end(), 1));
        if (rep.fit.separation) log << "evaluate: model " << m.name << ": classes are separable, coefficients diverge\n";
        if (!rep.fit.converged) log << "evaluate: model " << m.name << ": logit did not converge\n";
        reports.push_back(std::move(rep));
    }
    const std::string report = format_report(reports);
    if (!config.report.empty())
        write_text_file(config.report, report);
    else
        log << report;
    return reports;
}

std::string format_report(const std::vector<ModelReport>& reports) {
    std::ostringstream os;
    os << "model,observations,positives,converged,separation,intercept,coefficients,lambda,TP,FP,FN,TN,T1,T2,L,Ua,Ur,AUC\n";
    for (const auto& r : reports) {
        std::string coefs;
        for (std::size_t k = 0; k < r.model.features.size(); ++k) {
            if (k) coefs += ';';
            coefs += r.model.features[k] + ":" + format_double(r.fit.coefficients[static_cast<Eigen::Index>(k) + 1]);
        }
        const auto& o = r.outcome;
        os << csv_escape(r.model.name) << ',' << r.observations << ',' << r.positives << ','
           << (r.fit.converged ? 1 : 0) << ',' << (r.fit.separation ? 1 : 0) << ','
           << format_double(r.fit.coefficients[0]) << ',' << csv_escape(coefs) << ',' << format_double(o.lambda) << ','
           << o.counts.tp << ',' << o.counts.fp << ',' << o.counts.fn << ',' << o.counts.tn << ','
           << format_double(o.rates.t1) << ',' << format_double(o.rates.t2) << ',' << format_double(o.loss) << ','
           << format_double(o.use.absolute) << ',' << (o.use.relative ? format_double(*o.use.relative) : "NA") << ','
           << format_double(o.auc) << '\n';
    }
    return os.str();
}

SynthResult cmd_synth(const fs::path& spec_path, const fs::path& out, std::ostream& log) {
    require_file(spec_path, "synthetic spec");
    const SynthSpec spec = load_synth_spec(spec_path);
    fs::create_directories(out);
    const SynthResult res = generate_synthetic(spec, out / "corpus.jsonl");
    write_text_file(out / "patterns.json", pattern_config_json(spec.pattern_sets()));
    std::ostringstream os;
    os << "period,source,target,count\n";
    for (const auto& [key, c] : res.expected) {
        const auto& [p, a, b] = key;
        os << p << ',' << csv_escape(a) << ',' << csv_escape(b) << ',' << c << '\n';
    }
    write_text_file(out / "expected_counts.csv", os.str());
    log << "synth: " << res.articles << " articles, " << res.characters << " characters\n";
    return res;
}

void cmd_serve(const fs::path& root, const std::string& host, int port, std::ostream& log) {
    if (!fs::is_directory(root)) throw InputError("serve: '" + root.string() + "' is not a directory");
    httplib::Server server;
    if (!server.set_mount_point("/", root.string())) throw Error("serve: cannot mount '" + root.string() + "'");
    log << "serving " << root.string() << " on http://" << host << ":" << port << "/\n";
    log.flush();
    if (!server.listen(host, port)) throw Error("serve: cannot listen on " + host + ":" + std::to_string(port));
}

} // namespace textnet
