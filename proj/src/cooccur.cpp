#include "textnet/cooccur.hpp"

#include <algorithm>
#include <set>

#include "textnet/error.hpp"

namespace textnet {

void ContextParams::validate() const {
    if (window == 0) throw InputError("context window must be positive");
    if (max_entities < 2) throw InputError("max_entities must be at least 2");
}

std::vector<Context> contexts(std::span<const Occurrence> occ, const ContextParams& params) {
    std::vector<Context> out;
    const std::size_t n = occ.size();
    // lo[k]: first occurrence inside the window anchored at k. Offsets are
    // sorted, so lo is nondecreasing and the window set is the range [lo, k].
    std::vector<std::size_t> lo(n);
    std::size_t j = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t from = occ[k].offset >= params.window ? occ[k].offset - params.window : 0;
        while (occ[j].offset < from) ++j;
        lo[k] = j;
    }
    for (std::size_t k = 0; k < n; ++k) {
        // Window k is nested in window k+1 exactly when both start at the same occurrence.
        if (k + 1 < n && lo[k + 1] == lo[k]) continue;
        Context c;
        c.end = occ[k].offset;
        c.start = occ[k].offset >= params.window ? occ[k].offset - params.window : 0;
        c.first = lo[k];
        c.last = k;
        for (std::size_t i = lo[k]; i <= k; ++i) c.members.push_back(occ[i].entity);
        std::sort(c.members.begin(), c.members.end());
        c.members.erase(std::unique(c.members.begin(), c.members.end()), c.members.end());
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<EntityPair> relations(const Context& c, const ContextParams& params) {
    const std::size_t m = c.members.size();
    if (m < 2 || m > params.max_entities) return {};
    std::vector<EntityPair> out;
    out.reserve(m * (m - 1) / 2);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) out.push_back({c.members[a], c.members[b]});
    return out;
}

std::vector<Relation> extract(std::span<const Occurrence> occurrences, const ContextParams& params) {
    std::vector<Relation> out;
    std::set<EntityPair> seen;
    for (const auto& c : contexts(occurrences, params)) {
        for (const auto& p : relations(c, params)) {
            if (params.dedupe_per_article && !seen.insert(p).second) continue;
            out.push_back({p, c.start, c.end});
        }
    }
    return out;
}

std::vector<Relation> extract(std::string_view text, const PatternMatcher& matcher, const ContextParams& params) {
    const auto occ = matcher.scan(text);
    return extract(occ, params);
}

} // namespace textnet
