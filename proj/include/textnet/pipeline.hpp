#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "textnet/corpus.hpp"
#include "textnet/cooccur.hpp"
#include "textnet/matcher.hpp"
#include "textnet/netbuild.hpp"

namespace textnet {

struct ExtractStats {
    std::uint64_t articles_read = 0;
    std::uint64_t articles_sampled = 0;
    std::uint64_t occurrences = 0;
    std::uint64_t relations = 0;
};

struct PipelineOptions {
    ContextParams context;
    PeriodKind period_kind = PeriodKind::quarter;
    SampleSpec sample;
    /// Worker threads for scanning; 0 picks the hardware concurrency.
    unsigned threads = 0;
    /// Articles handed to the workers per batch.
    std::size_t batch_size = 2048;
};

/// Called once per relation in corpus order, for the audit log.
using RelationSink = std::function<void(const Article&, const Period&, const Relation&)>;

struct DynamicNetwork {
    DynamicNetworkBuilder builder;
    ExtractStats stats;

    std::vector<CrossSectionNetwork> networks() const { return builder.networks(); }
};

/// Scans, windows and aggregates an article stream into per-period networks.
/// Output is identical for any thread count.
DynamicNetwork build_dynamic(CorpusReader& corpus, const PatternMatcher& matcher,
                             const PipelineOptions& options, const RelationSink& sink = {});
DynamicNetwork build_dynamic(const std::filesystem::path& corpus, const PatternMatcher& matcher,
                             const PipelineOptions& options, const RelationSink& sink = {});
DynamicNetwork build_dynamic(const std::vector<Article>& corpus, const PatternMatcher& matcher,
                             const PipelineOptions& options, const RelationSink& sink = {});

} // namespace textnet
