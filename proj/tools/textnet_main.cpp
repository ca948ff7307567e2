// textnet: text-to-network command-line driver.

#include <iostream>

#include <CLI11.hpp>

#include "textnet/commands.hpp"
#include "textnet/error.hpp"

namespace {

void add_run_flags(CLI::App* cmd, textnet::RunConfig& cfg, std::string& period, bool needs_from) {
    cmd->add_option("--corpus", cfg.corpus, "Newline-delimited JSON corpus");
    cmd->add_option("--patterns", cfg.patterns, "Entity pattern config (JSON)");
    if (needs_from) cmd->add_option("--from", cfg.from, "Output directory of a previous extract run");
    cmd->add_option("--out", cfg.out, "Output directory")->capture_default_str();
    cmd->add_option("--window", cfg.window, "Context window in characters")->capture_default_str();
    cmd->add_option("--max-entities", cfg.max_entities, "Disqualify contexts with more distinct entities")
        ->capture_default_str();
    cmd->add_flag("--dedupe-per-article", cfg.dedupe_per_article, "Count each pair at most once per article");
    cmd->add_option("--alpha", cfg.alpha, "Laplace smoothing constant")->capture_default_str();
    cmd->add_option("--period", period, "quarter | month | year | full-span")->capture_default_str();
    cmd->add_option("--sample", cfg.sample, "Article sampling fraction in (0,1]")->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "Sampling seed")->capture_default_str();
    cmd->add_option("--min-weight", cfg.min_weight, "Drop links with weight <= this")->capture_default_str();
    cmd->add_option("--threads", cfg.threads, "Scanner threads (0 = all cores)")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"textnet: entity co-occurrence networks, information centrality and early-warning evaluation"};
    app.require_subcommand(1);

    textnet::RunConfig run;
    std::string period = "quarter";
    bool no_audit = false;

    auto* extract = app.add_subcommand("extract", "Detect mentions and count co-occurrences per period");
    add_run_flags(extract, run, period, false);
    extract->add_flag("--no-audit", no_audit, "Skip the per-relation audit log");

    auto* network = app.add_subcommand("network", "Write per-period network documents and the centrality panel");
    add_run_flags(network, run, period, true);

    auto* metrics = app.add_subcommand("metrics", "Write node and network measures");
    add_run_flags(metrics, run, period, true);

    textnet::EvaluateConfig eval;
    std::vector<std::string> models;
    std::string post = "zero";
    auto* evaluate = app.add_subcommand("evaluate", "Fit early-warning logit models and report Usefulness");
    evaluate->add_option("--panel", eval.panel, "Panel CSV (entity,period,label,features...)")->required();
    evaluate->add_option("--events", eval.events, "Distress events CSV (entity,event_date,event_type)");
    evaluate->add_option("--model", models, "Model as name=feat1+feat2 (repeatable)")->required();
    evaluate->add_option("--mu", eval.mu, "Preference for missing crises")->capture_default_str();
    evaluate->add_option("--horizon", eval.horizon, "Pre-distress horizon in months")->capture_default_str();
    evaluate->add_option("--post-event", post, "zero | drop: handling of distress and later periods")
        ->capture_default_str();
    evaluate->add_option("--holdout", eval.holdout, "Held-out fraction (0 = in-sample)")->capture_default_str();
    evaluate->add_option("--seed", eval.seed, "Holdout split seed")->capture_default_str();
    evaluate->add_option("--out", eval.report, "Report CSV (default: stdout)");

    std::filesystem::path synth_spec, synth_out = "synthetic";
    auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus from a planted-structure spec");
    synth->add_option("--spec", synth_spec, "Synthetic spec (JSON)")->required();
    synth->add_option("--out", synth_out, "Output directory")->capture_default_str();

    std::filesystem::path serve_root = "out";
    std::string host = "127.0.0.1";
    int port = 8000;
    auto* serve = app.add_subcommand("serve", "Serve an output directory over HTTP for the explorer");
    serve->add_option("--out", serve_root, "Directory to serve")->capture_default_str();
    serve->add_option("--host", host)->capture_default_str();
    serve->add_option("--port", port)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        run.period = textnet::parse_period_kind(period);
        run.write_audit = !no_audit;
        if (extract->parsed()) {
            textnet::cmd_extract(run, std::cerr);
        } else if (network->parsed()) {
            textnet::cmd_network(run, std::cerr);
        } else if (metrics->parsed()) {
            textnet::cmd_metrics(run, std::cerr);
        } else if (evaluate->parsed()) {
            for (const auto& m : models) eval.models.push_back(textnet::ModelSpec::parse(m));
            if (post == "zero")
                eval.post_event = textnet::PostEventPolicy::label_zero;
            else if (post == "drop")
                eval.post_event = textnet::PostEventPolicy::drop;
            else
                throw textnet::InputError("--post-event must be 'zero' or 'drop'");
            std::ostream& sink = eval.report.empty() ? std::cout : std::cerr;
            textnet::cmd_evaluate(eval, sink);
        } else if (synth->parsed()) {
            textnet::cmd_synth(synth_spec, synth_out, std::cerr);
        } else if (serve->parsed()) {
            textnet::cmd_serve(serve_root, host, port, std::cerr);
        }
    } catch (const std::exception& e) {
        std::cerr << "textnet: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
