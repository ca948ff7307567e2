#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "textnet/corpus.hpp"
#include "textnet/matcher.hpp"
#include "textnet/period.hpp"

namespace textnet {

struct SynthEntity {
    std::string label;
    /// Surface forms written into the text; the first one is used for planted items.
    std::vector<std::string> mentions;
    /// Defaults to a word-bounded literal for each mention.
    std::vector<std::string> patterns;
    bool case_sensitive = true;
    bool gsib = false;
};

/// A planted arrangement of mentions placed in its own article.
struct PlantedItem {
    enum class Kind {
        /// Two mentions whose starts are `distance` characters apart.
        pair,
        /// First entity twice, then the second, all inside one window.
        repeat,
        /// All members inside one window; at most max_entities of them.
        listing,
        /// More than max_entities members inside one window, expected to
        /// yield no relations.
        crowd,
        /// One entity alone.
        single,
    };
    Kind kind = Kind::pair;
    std::vector<std::string> members;
    std::size_t distance = 0;
    std::size_t count = 1;
};

struct PlantedPeriod {
    Period period;
    std::vector<PlantedItem> items;
};

/// Unstructured bulk corpus for throughput testing.
struct RandomCorpusSpec {
    std::size_t articles = 0;
    /// Approximate characters per article.
    std::size_t chars = 500;
    std::size_t max_mentions = 3;
    std::chrono::year_month_day start{std::chrono::year{2007}, std::chrono::January, std::chrono::day{1}};
    std::chrono::year_month_day end{std::chrono::year{2014}, std::chrono::September, std::chrono::day{30}};
};

struct SynthSpec {
    std::uint64_t seed = 0;
    std::size_t window = 400;
    std::size_t max_entities = 5;
    std::vector<SynthEntity> entities;
    std::vector<std::string> filler;
    std::vector<PlantedPeriod> periods;
    std::optional<RandomCorpusSpec> random;

    std::vector<EntityPatternSet> pattern_sets() const;
};

/// `patterns_file`, when present, is resolved against `base_dir` and supplies
/// patterns, case flag and gsib flag for every entity by label.
SynthSpec parse_synth_spec(std::string_view json_text, const std::filesystem::path& base_dir = {});
SynthSpec load_synth_spec(const std::filesystem::path& path);
std::string pattern_config_json(const std::vector<EntityPatternSet>& sets);

/// Ground truth: (period label, first label, second label) -> count, with
/// the pair ordered by entity position in the spec.
using PlantedCounts = std::map<std::tuple<std::string, std::string, std::string>, std::uint64_t>;

struct SynthResult {
    std::size_t articles = 0;
    std::size_t characters = 0;
    PlantedCounts expected;
};

/// Generates the corpus, calling `emit` once per article in corpus order.
/// Planted items are checked for feasibility before anything is emitted;
/// every planted article is re-scanned to confirm that the planted mentions
/// (and nothing else) are detected.
SynthResult generate_synthetic(const SynthSpec& spec, const std::function<void(const Article&)>& emit);
/// Writes the corpus as newline-delimited records.
SynthResult generate_synthetic(const SynthSpec& spec, const std::filesystem::path& corpus_path);

} // namespace textnet
