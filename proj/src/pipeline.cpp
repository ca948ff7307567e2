#include "textnet/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace textnet {

namespace {

struct Scanned {
    Period period;
    std::size_t occurrences = 0;
    std::vector<Relation> relations;
};

class BatchProcessor {
public:
    BatchProcessor(const PatternMatcher& matcher, const PipelineOptions& options, const RelationSink& sink)
        : matcher_(matcher), options_(options), sink_(sink),
          result_{DynamicNetworkBuilder(matcher.labels(), options.period_kind), {}} {
        options_.context.validate();
        options_.sample.validate();
        threads_ = options_.threads ? options_.threads : std::max(1u, std::thread::hardware_concurrency());
    }

    void push(Article a) {
        ++result_.stats.articles_read;
        if (!options_.sample.includes(a.id)) return;
        batch_.push_back(std::move(a));
        if (batch_.size() >= options_.batch_size) flush();
    }

    DynamicNetwork finish() {
        flush();
        return std::move(result_);
    }

private:
    void scan_one(std::size_t i) {
        const Article& a = batch_[i];
        auto occ = matcher_.scan(a.text);
        scanned_[i].period = assign_period(a.date, options_.period_kind);
        scanned_[i].occurrences = occ.size();
        scanned_[i].relations = extract(occ, options_.context);
    }

    void flush() {
        if (batch_.empty()) return;
        scanned_.assign(batch_.size(), {});
        const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads_, batch_.size()));
        if (workers <= 1) {
            for (std::size_t i = 0; i < batch_.size(); ++i) scan_one(i);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < workers; ++t) {
                pool.emplace_back([&] {
                    for (std::size_t i = next++; i < batch_.size(); i = next++) scan_one(i);
                });
            }
        }
        // Merge in corpus order so counts and the audit stream are deterministic.
        for (std::size_t i = 0; i < batch_.size(); ++i) {
            const auto& s = scanned_[i];
            ++result_.stats.articles_sampled;
            result_.stats.occurrences += s.occurrences;
            result_.stats.relations += s.relations.size();
            result_.builder.touch(s.period);
            for (const auto& r : s.relations) {
                result_.builder.add(s.period, r.pair);
                if (sink_) sink_(batch_[i], s.period, r);
            }
        }
        batch_.clear();
    }

    const PatternMatcher& matcher_;
    PipelineOptions options_;
    const RelationSink& sink_;
    unsigned threads_ = 1;
    std::vector<Article> batch_;
    std::vector<Scanned> scanned_;
    DynamicNetwork result_;
};

} // namespace

DynamicNetwork build_dynamic(CorpusReader& corpus, const PatternMatcher& matcher,
                             const PipelineOptions& options, const RelationSink& sink) {
    BatchProcessor proc(matcher, options, sink);
    while (auto a = corpus.next()) proc.push(std::move(*a));
    return proc.finish();
}

DynamicNetwork build_dynamic(const std::filesystem::path& corpus, const PatternMatcher& matcher,
                             const PipelineOptions& options, const RelationSink& sink) {
    CorpusReader reader(corpus);
    return build_dynamic(reader, matcher, options, sink);
}

DynamicNetwork build_dynamic(const std::vector<Article>& corpus, const PatternMatcher& matcher,
                             const PipelineOptions& options, const RelationSink& sink) {
    BatchProcessor proc(matcher, options, sink);
    for (const auto& a : corpus) proc.push(a);
    return proc.finish();
}

} // namespace textnet
