#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "textnet/matcher.hpp"

namespace textnet {

inline constexpr std::size_t unlimited = std::numeric_limits<std::size_t>::max();

struct ContextParams {
    /// Window length in characters.
    std::size_t window = 400;
    /// Contexts naming more distinct entities than this yield no relations.
    std::size_t max_entities = 5;
    /// Count each pair at most once per article instead of once per context.
    bool dedupe_per_article = false;

    void validate() const;
};

/// A trailing character window anchored at one occurrence.
///
/// `first`/`last` index the occurrence list the context was built from; the
/// window covers every occurrence whose start lies in [start, end].
struct Context {
    std::size_t start = 0;
    std::size_t end = 0;
    std::size_t first = 0;
    std::size_t last = 0;
    /// Distinct entities, ascending.
    std::vector<EntityIndex> members;
};

/// Unordered entity pair stored with first < second.
struct EntityPair {
    EntityIndex first = 0;
    EntityIndex second = 0;

    static EntityPair of(EntityIndex a, EntityIndex b) { return a < b ? EntityPair{a, b} : EntityPair{b, a}; }

    friend bool operator==(const EntityPair&, const EntityPair&) = default;
    friend auto operator<=>(const EntityPair&, const EntityPair&) = default;
};

/// One co-occurrence sighting within an article.
struct Relation {
    EntityPair pair;
    std::size_t span_start = 0;
    std::size_t span_end = 0;
};

/// Maximal contexts of an article. One window [offset - window, offset] is
/// opened per occurrence; a window whose occurrence set is contained in a
/// later window's set is dropped, so nested windows are counted once.
/// `occurrences` must be sorted by offset.
std::vector<Context> contexts(std::span<const Occurrence> occurrences, const ContextParams& params);

/// All pairs over the context members, empty for fewer than two or more than
/// `max_entities` distinct members.
std::vector<EntityPair> relations(const Context& c, const ContextParams& params);

std::vector<Relation> extract(std::span<const Occurrence> occurrences, const ContextParams& params);
std::vector<Relation> extract(std::string_view text, const PatternMatcher& matcher, const ContextParams& params);

} // namespace textnet
