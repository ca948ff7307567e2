#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "textnet/earlywarn.hpp"
#include "textnet/pipeline.hpp"
#include "textnet/synth.hpp"

namespace textnet {

struct RunConfig {
    std::filesystem::path corpus;
    std::filesystem::path patterns;
    /// Output directory of an earlier `extract` run, used instead of the corpus.
    std::filesystem::path from;
    std::filesystem::path out = "out";
    std::size_t window = 400;
    std::size_t max_entities = 5;
    bool dedupe_per_article = false;
    double alpha = 1.0;
    PeriodKind period = PeriodKind::quarter;
    double sample = 1.0;
    std::uint64_t seed = 0;
    /// Links at or below this weight are dropped before any metric (0 = keep all).
    double min_weight = 0.0;
    unsigned threads = 0;
    bool write_audit = true;

    void validate() const;
    PipelineOptions pipeline_options() const;
};

/// Scans the corpus and writes relations_audit.csv, relation_counts.csv and
/// extract_summary.json to `out`.
DynamicNetwork cmd_extract(const RunConfig& config, std::ostream& log);

/// Writes networks/<period>.json, centrality_panel.{json,csv} and index.json.
/// Runs the extraction first unless `from` is set.
std::vector<CrossSectionNetwork> cmd_network(const RunConfig& config, std::ostream& log);

/// Writes per-node and per-network measures plus strength-distribution fits
/// under out/metrics/.
void cmd_metrics(const RunConfig& config, std::ostream& log);

struct ModelSpec {
    std::string name;
    std::vector<std::string> features;

    /// "name=feat1+feat2" or "feat1+feat2".
    static ModelSpec parse(const std::string& text);
};

struct EvaluateConfig {
    std::filesystem::path panel;
    std::filesystem::path events;
    std::filesystem::path report;
    std::vector<ModelSpec> models;
    double mu = 0.9;
    int horizon = 24;
    PostEventPolicy post_event = PostEventPolicy::label_zero;
    /// Fraction of observations held out for evaluation; 0 evaluates in sample.
    double holdout = 0.0;
    std::uint64_t seed = 0;
};

struct ModelReport {
    ModelSpec model;
    LogitFit fit;
    EvalOutcome outcome;
    std::size_t observations = 0;
    std::size_t positives = 0;
};

std::vector<ModelReport> cmd_evaluate(const EvaluateConfig& config, std::ostream& log);
std::string format_report(const std::vector<ModelReport>& reports);

/// Writes corpus.jsonl, patterns.json and expected_counts.csv to `out`.
SynthResult cmd_synth(const std::filesystem::path& spec, const std::filesystem::path& out, std::ostream& log);

/// Serves `root` over plain HTTP until the process is stopped.
void cmd_serve(const std::filesystem::path& root, const std::string& host, int port, std::ostream& log);

struct Extraction {
    DynamicNetworkBuilder builder;
    std::vector<bool> gsib;
};

/// Reads relation_counts.csv + extract_summary.json from an extract output directory.
Extraction load_extraction(const std::filesystem::path& dir);

} // namespace textnet
