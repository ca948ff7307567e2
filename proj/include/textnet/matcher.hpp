#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace textnet {

using EntityIndex = std::uint32_t;

/// An entity label and the regular expressions matching its name variants.
struct EntityPatternSet {
    std::string label;
    std::vector<std::string> patterns;
    bool case_sensitive = true;
    /// Display flag carried through to exported network documents.
    bool gsib = false;
};

/// One detected mention. Offsets and lengths count Unicode code points.
struct Occurrence {
    EntityIndex entity = 0;
    std::size_t offset = 0;
    std::size_t length = 0;

    friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

/// Reads a pattern config:
///   {"entities": [{"label": "...", "patterns": ["..."], "case_sensitive": true, "gsib": false}]}
std::vector<EntityPatternSet> load_patterns(const std::filesystem::path& path);
std::vector<EntityPatternSet> parse_patterns(std::string_view json_text);

/// Compiled, immutable pattern sets. Safe to share across threads.
class PatternMatcher {
public:
    explicit PatternMatcher(std::vector<EntityPatternSet> entities);
    ~PatternMatcher();
    PatternMatcher(PatternMatcher&&) noexcept;
    PatternMatcher& operator=(PatternMatcher&&) noexcept;

    const std::vector<EntityPatternSet>& entities() const { return entities_; }
    std::size_t size() const { return entities_.size(); }
    std::vector<std::string> labels() const;
    /// Throws InputError when the label is not configured.
    EntityIndex index_of(std::string_view label) const;

    /// All non-overlapping mentions in `text` (UTF-8), sorted by offset.
    /// Overlapping candidates are resolved longest-first, then by earlier
    /// start, then by config order.
    std::vector<Occurrence> scan(std::string_view text) const;

private:
    struct Compiled;
    std::vector<EntityPatternSet> entities_;
    std::unique_ptr<Compiled> compiled_;
};

/// Number of code points in a UTF-8 string.
std::size_t utf8_length(std::string_view text);

} // namespace textnet
