#include <doctest.h>

#include <fstream>

#include "oracles.hpp"
#include "textnet/pipeline.hpp"
#include "textnet/synth.hpp"

using namespace textnet;
using namespace std::chrono;

namespace {

const std::filesystem::path kData(TEXTNET_DATA_DIR);

std::vector<Article> random_corpus(std::size_t n, SynthSpec& spec) {
    spec = load_synth_spec(kData / "synth" / "throughput.json");
    spec.random->articles = n;
    spec.seed = 77;
    std::vector<Article> out;
    generate_synthetic(spec, [&](const Article& a) { out.push_back(a); });
    return out;
}

} // namespace

TEST_CASE("results do not depend on thread count or batch size") {
    SynthSpec spec;
    const auto corpus = random_corpus(1500, spec);
    const PatternMatcher matcher(spec.pattern_sets());
    PipelineOptions base;
    base.threads = 1;
    std::vector<std::string> base_log;
    const auto ref = build_dynamic(corpus, matcher, base, [&](const Article& a, const Period& p, const Relation& r) {
        base_log.push_back(a.id + to_label(p) + std::to_string(r.pair.first) + "-" + std::to_string(r.pair.second) + "@" +
                           std::to_string(r.span_end));
    });
    CHECK(ref.stats.relations == base_log.size());
    CHECK(ref.stats.articles_read == 1500);
    CHECK(ref.stats.relations > 0);
    for (unsigned threads : {2u, 3u, 8u}) {
        for (std::size_t batch : {1u, 7u, 512u}) {
            PipelineOptions opts = base;
            opts.threads = threads;
            opts.batch_size = batch;
            std::vector<std::string> log;
            const auto dyn = build_dynamic(corpus, matcher, opts, [&](const Article& a, const Period& p, const Relation& r) {
                log.push_back(a.id + to_label(p) + std::to_string(r.pair.first) + "-" + std::to_string(r.pair.second) +
                              "@" + std::to_string(r.span_end));
            });
            CHECK(log == base_log);
            CHECK(dyn.builder.counts() == ref.builder.counts());
            CHECK(dyn.stats.occurrences == ref.stats.occurrences);
        }
    }
}

TEST_CASE("total weight per period equals the relation count") {
    SynthSpec spec;
    const auto corpus = random_corpus(800, spec);
    const PatternMatcher matcher(spec.pattern_sets());
    std::map<Period, std::uint64_t> per_period;
    const auto dyn = build_dynamic(corpus, matcher, {}, [&](const Article&, const Period& p, const Relation&) { ++per_period[p]; });
    const auto nets = dyn.networks();
    CHECK(nets.size() == 31);
    for (const auto& net : nets) CHECK(net.total_weight() == static_cast<double>(per_period[net.period]));
}

TEST_CASE("dedupe per article") {
    const PatternMatcher matcher(parse_patterns(R"({"entities":[{"label":"A","patterns":["\\bAlpha\\b"]},{"label":"B","patterns":["\\bBeta\\b"]}]})"));
    const std::string text = "Alpha Beta" + std::string(500, ' ') + "Alpha Beta";
    const std::vector<Article> corpus = {{"x", 2008y / May / 1d, text}};
    PipelineOptions opts;
    CHECK(build_dynamic(corpus, matcher, opts).networks()[0].weights(0, 1) == 2);
    opts.context.dedupe_per_article = true;
    CHECK(build_dynamic(corpus, matcher, opts).networks()[0].weights(0, 1) == 1);
}

TEST_CASE("sampling inside the pipeline") {
    SynthSpec spec;
    const auto corpus = random_corpus(2000, spec);
    const PatternMatcher matcher(spec.pattern_sets());
    PipelineOptions opts;
    opts.sample = {0.45, 3};
    const auto a = build_dynamic(corpus, matcher, opts);
    const auto b = build_dynamic(sample(corpus, opts.sample), matcher, {});
    CHECK(a.stats.articles_read == 2000);
    CHECK(a.stats.articles_sampled == b.stats.articles_read);
    CHECK(a.builder.counts() == b.builder.counts());
}

TEST_CASE("streaming from a file matches the in-memory path") {
    SynthSpec spec;
    const auto corpus = random_corpus(400, spec);
    oracle::TempDir dir("pipeline");
    {
        std::ofstream out(dir / "c.jsonl");
        for (const auto& a : corpus) out << to_record(a) << '\n';
    }
    const PatternMatcher matcher(spec.pattern_sets());
    PipelineOptions opts;
    opts.batch_size = 64;
    CHECK(build_dynamic(dir / "c.jsonl", matcher, opts).builder.counts() == build_dynamic(corpus, matcher, opts).builder.counts());
}

TEST_CASE("period kinds") {
    SynthSpec spec;
    const auto corpus = random_corpus(600, spec);
    const PatternMatcher matcher(spec.pattern_sets());
    PipelineOptions opts;
    opts.period_kind = PeriodKind::full_span;
    const auto all = build_dynamic(corpus, matcher, opts).networks();
    REQUIRE(all.size() == 1);
    opts.period_kind = PeriodKind::quarter;
    double total = 0.0;
    for (const auto& n : build_dynamic(corpus, matcher, opts).networks()) total += n.total_weight();
    CHECK(all[0].total_weight() == total);
}
