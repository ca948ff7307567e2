#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace textnet {

/// One timestamped document; the unit of scanning.
struct Article {
    std::string id;
    std::chrono::year_month_day date;
    std::string text;
};

/// Parses "YYYY-MM-DD", optionally followed by a 'T' time part which is ignored.
std::chrono::year_month_day parse_date(std::string_view s);
std::string format_date(std::chrono::year_month_day d);

/// Parses one corpus record. `line_no` is only used in error messages.
Article parse_article(std::string_view line, std::size_t line_no);
/// Serializes an article as a single corpus line (no trailing newline).
std::string to_record(const Article& a);

/// Streams articles from a newline-delimited JSON corpus file.
///
/// Records are read one line at a time, so memory use is bounded by the
/// longest record plus the set of ids seen so far (kept for the uniqueness
/// check). Blank lines are skipped.
class CorpusReader {
public:
    explicit CorpusReader(const std::filesystem::path& path);

    /// Next article, or nullopt at end of file.
    std::optional<Article> next();

    std::size_t line_number() const { return line_no_; }

private:
    std::ifstream in_;
    std::string buffer_;
    std::size_t line_no_ = 0;
    std::unordered_set<std::string> seen_;
};

std::vector<Article> read_corpus(const std::filesystem::path& path);

/// Per-article Bernoulli sample, keyed on a stable hash of (seed, id).
struct SampleSpec {
    double fraction = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
    bool includes(std::string_view article_id) const;
};

/// Uniform draw in [0,1) derived from (seed, key); stable across platforms.
double stable_uniform(std::uint64_t seed, std::string_view key);

std::vector<Article> sample(const std::vector<Article>& corpus, const SampleSpec& spec);

} // namespace textnet
