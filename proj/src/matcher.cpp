#include "textnet/matcher.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include <boost/regex.hpp>
#include <json.hpp>

#include "textnet/error.hpp"

namespace textnet {

struct PatternMatcher::Compiled {
    struct Pattern {
        EntityIndex entity;
        boost::regex re;
    };
    std::vector<Pattern> patterns;
};

namespace {

bool is_continuation(unsigned char c) { return (c & 0xC0) == 0x80; }

struct Candidate {
    std::size_t begin;
    std::size_t end;
    EntityIndex entity;
};

} // namespace

std::size_t utf8_length(std::string_view text) {
    return static_cast<std::size_t>(std::count_if(text.begin(), text.end(), [](char c) {
        return !is_continuation(static_cast<unsigned char>(c));
    }));
}

std::vector<EntityPatternSet> parse_patterns(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("pattern config is not valid JSON: ") + e.what());
    }
    const auto& list = doc.is_object() && doc.contains("entities") ? doc["entities"] : doc;
    if (!list.is_array()) throw InputError("pattern config must contain an 'entities' array");
    std::vector<EntityPatternSet> out;
    for (const auto& e : list) {
        EntityPatternSet set;
        if (!e.contains("label") || !e["label"].is_string())
            throw InputError("pattern config: entity without a label");
        set.label = e["label"].get<std::string>();
        if (e.contains("patterns")) {
            for (const auto& p : e["patterns"]) {
                if (!p.is_string())
                    throw InputError("pattern config: non-string pattern for entity '" + set.label + "'");
                set.patterns.push_back(p.get<std::string>());
            }
        }
        set.case_sensitive = e.value("case_sensitive", true);
        set.gsib = e.value("gsib", false);
        out.push_back(std::move(set));
    }
    return out;
}

std::vector<EntityPatternSet> load_patterns(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open pattern config '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    auto sets = parse_patterns(ss.str());
    // Compile once here so that a bad config is rejected at load time.
    PatternMatcher{sets};
    return sets;
}

PatternMatcher::PatternMatcher(std::vector<EntityPatternSet> entities)
    : entities_(std::move(entities)), compiled_(std::make_unique<Compiled>()) {
    std::unordered_set<std::string> labels;
    for (EntityIndex i = 0; i < entities_.size(); ++i) {
        const auto& e = entities_[i];
        if (e.label.empty()) throw InputError("pattern config: empty entity label");
        if (!labels.insert(e.label).second)
            throw InputError("pattern config: duplicate label '" + e.label + "'");
        if (e.patterns.empty())
            throw InputError("pattern config: entity '" + e.label + "' has no patterns");
        auto flags = boost::regex::perl | boost::regex::optimize;
        if (!e.case_sensitive) flags |= boost::regex::icase;
        for (const auto& p : e.patterns) {
            boost::regex re;
            try {
                re.assign(p, flags);
            } catch (const boost::regex_error& err) {
                throw InputError("pattern config: entity '" + e.label + "' pattern '" + p +
                                 "' does not compile: " + err.what());
            }
            if (boost::regex_match(std::string{}, re))
                throw InputError("pattern config: entity '" + e.label + "' pattern '" + p +
                                 "' matches the empty string");
            compiled_->patterns.push_back({i, std::move(re)});
        }
    }
}

PatternMatcher::~PatternMatcher() = default;
PatternMatcher::PatternMatcher(PatternMatcher&&) noexcept = default;
PatternMatcher& PatternMatcher::operator=(PatternMatcher&&) noexcept = default;

std::vector<std::string> PatternMatcher::labels() const {
    std::vector<std::string> out;
    out.reserve(entities_.size());
    for (const auto& e : entities_) out.push_back(e.label);
    return out;
}

EntityIndex PatternMatcher::index_of(std::string_view label) const {
    for (EntityIndex i = 0; i < entities_.size(); ++i)
        if (entities_[i].label == label) return i;
    throw InputError("unknown entity '" + std::string(label) + "'");
}

std::vector<Occurrence> PatternMatcher::scan(std::string_view text) const {
    std::vector<Candidate> cands;
    for (const auto& p : compiled_->patterns) {
        boost::cregex_iterator it(text.data(), text.data() + text.size(), p.re), end;
        for (; it != end; ++it) {
            const auto& m = (*it)[0];
            if (m.length() <= 0) continue;
            const auto b = static_cast<std::size_t>(m.first - text.data());
            cands.push_back({b, b + static_cast<std::size_t>(m.length()), p.entity});
        }
    }
    if (cands.empty()) return {};

    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        const auto la = a.end - a.begin, lb = b.end - b.begin;
        if (la != lb) return la > lb;
        if (a.begin != b.begin) return a.begin < b.begin;
        return a.entity < b.entity;
    });

    // Accepted spans keyed by begin byte; spans are pairwise disjoint.
    std::map<std::size_t, const Candidate*> accepted;
    for (const auto& c : cands) {
        auto after = accepted.lower_bound(c.begin);
        if (after != accepted.end() && after->first < c.end) continue;
        if (after != accepted.begin() && std::prev(after)->second->end > c.begin) continue;
        accepted.emplace(c.begin, &c);
    }

    std::vector<Occurrence> out;
    out.reserve(accepted.size());
    std::size_t byte = 0, chars = 0;
    auto advance = [&](std::size_t to) {
        for (; byte < to; ++byte)
            if (!is_continuation(static_cast<unsigned char>(text[byte]))) ++chars;
        return chars;
    };
    for (const auto& [begin, c] : accepted) {
        const std::size_t start = advance(c->begin);
        const std::size_t stop = advance(c->end);
        out.push_back({c->entity, start, stop - start});
    }
    return out;
}

} // namespace textnet
