#include "textnet/synth.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include <json.hpp>

#include "textnet/error.hpp"
#include "textnet/export.hpp"

namespace textnet {

namespace {

using json = nlohmann::json;

const std::vector<std::string> kDefaultFiller = {
    "the",      "market",    "shares",  "rose",     "fell",      "percent", "said",     "on",
    "tuesday",  "analysts",  "expect",  "quarter",  "profit",    "loss",    "capital",  "ratio",
    "lending",  "deposits",  "bond",    "yields",   "investors", "euro",    "zone",     "debt",
    "crisis",   "regulators", "of",     "and",      "in",        "a",       "for",      "with",
    "börse",    "änderung",  "crédito", "société",  "trading",   "index",   "outlook",  "rating",
};

std::string escape_regex(std::string_view s) {
    static const std::string special = R"(\^$.|?*+()[]{})";
    std::string out;
    for (char c : s) {
        if (special.find(c) != std::string::npos) out += '\\';
        out += c;
    }
    return out;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(gen_() % n); }
    std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

private:
    std::mt19937_64 gen_;
};

// Text plus a running code-point count.
struct TextBuilder {
    std::string text;
    std::size_t chars = 0;

    void append(std::string_view s) {
        text += s;
        chars += utf8_length(s);
    }
};

class Writer {
public:
    Writer(const SynthSpec& spec, Rng& rng) : spec_(spec), rng_(rng) {}

    // Exactly `n` characters of filler, beginning and ending with a space.
    void filler(TextBuilder& tb, std::size_t n) {
        if (n == 0) return;
        const std::size_t target = tb.chars + n;
        tb.append(" ");
        while (tb.chars < target) {
            const auto& w = words()[rng_.below(words().size())];
            const std::size_t wl = utf8_length(w);
            if (tb.chars + wl + 1 <= target) {
                tb.append(w);
                tb.append(" ");
            } else {
                tb.append(std::string(target - tb.chars, ' '));
            }
        }
    }

    const std::vector<std::string>& words() const { return spec_.filler.empty() ? kDefaultFiller : spec_.filler; }

private:
    const SynthSpec& spec_;
    Rng& rng_;
};

std::chrono::year_month_day random_day(Rng& rng, const Period& p) {
    int months = 1;
    switch (p.kind) {
    case PeriodKind::quarter: months = 3; break;
    case PeriodKind::month: months = 1; break;
    case PeriodKind::year: months = 12; break;
    case PeriodKind::full_span: throw InputError("planted periods must be dated");
    }
    const int m = start_month_index(p) + static_cast<int>(rng.below(static_cast<std::size_t>(months)));
    const std::chrono::year y{m / 12};
    const std::chrono::month mon{static_cast<unsigned>(m % 12 + 1)};
    const unsigned last = static_cast<unsigned>(std::chrono::year_month_day_last{y / mon / std::chrono::last}.day());
    return {y, mon, std::chrono::day{static_cast<unsigned>(rng.between(1, last))}};
}

PlantedItem::Kind parse_kind(const std::string& s) {
    if (s == "pair") return PlantedItem::Kind::pair;
    if (s == "repeat") return PlantedItem::Kind::repeat;
    if (s == "listing") return PlantedItem::Kind::listing;
    if (s == "crowd") return PlantedItem::Kind::crowd;
    if (s == "single") return PlantedItem::Kind::single;
    throw InputError("synthetic spec: unknown item kind '" + s + "'");
}

std::string make_id(std::size_t k) {
    std::string digits = std::to_string(k);
    return "synth-" + std::string(digits.size() < 7 ? 7 - digits.size() : 0, '0') + digits;
}

} // namespace

std::vector<EntityPatternSet> SynthSpec::pattern_sets() const {
    std::vector<EntityPatternSet> out;
    for (const auto& e : entities) {
        EntityPatternSet set{e.label, e.patterns, e.case_sensitive, e.gsib};
        if (set.patterns.empty())
            for (const auto& m : e.mentions) set.patterns.push_back("\\b" + escape_regex(m) + "\\b");
        out.push_back(std::move(set));
    }
    return out;
}

SynthSpec parse_synth_spec(std::string_view json_text, const std::filesystem::path& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("synthetic spec is not valid JSON: ") + e.what());
    }
    SynthSpec spec;
    try {
        spec.seed = j.value("seed", std::uint64_t{0});
        spec.window = j.value("window", std::size_t{400});
        spec.max_entities = j.value("max_entities", std::size_t{5});
        for (const auto& e : j.at("entities")) {
            SynthEntity ent;
            ent.label = e.at("label").get<std::string>();
            if (e.contains("mentions")) ent.mentions = e["mentions"].get<std::vector<std::string>>();
            if (e.contains("mention")) ent.mentions.insert(ent.mentions.begin(), e["mention"].get<std::string>());
            if (e.contains("patterns")) ent.patterns = e["patterns"].get<std::vector<std::string>>();
            ent.case_sensitive = e.value("case_sensitive", true);
            ent.gsib = e.value("gsib", false);
            if (ent.mentions.empty()) throw InputError("synthetic spec: entity '" + ent.label + "' has no mention");
            spec.entities.push_back(std::move(ent));
        }
        if (j.contains("patterns_file")) {
            const auto sets = load_patterns(base_dir / j["patterns_file"].get<std::string>());
            for (auto& ent : spec.entities) {
                const auto it = std::find_if(sets.begin(), sets.end(), [&](const auto& s) { return s.label == ent.label; });
                if (it == sets.end()) throw InputError("synthetic spec: entity '" + ent.label + "' is not in the pattern file");
                ent.patterns = it->patterns;
                ent.case_sensitive = it->case_sensitive;
                ent.gsib = it->gsib;
            }
        }
        if (j.contains("filler")) spec.filler = j["filler"].get<std::vector<std::string>>();
        if (j.contains("periods")) {
            for (const auto& p : j["periods"]) {
                PlantedPeriod pp{parse_period(p.at("period").get<std::string>()), {}};
                for (const auto& it : p.value("items", json::array())) {
                    PlantedItem item;
                    item.kind = parse_kind(it.at("kind").get<std::string>());
                    item.members = it.at("members").get<std::vector<std::string>>();
                    item.distance = it.value("distance", std::size_t{0});
                    item.count = it.value("count", std::size_t{1});
                    pp.items.push_back(std::move(item));
                }
                spec.periods.push_back(std::move(pp));
            }
        }
        if (j.contains("random")) {
            const auto& r = j["random"];
            RandomCorpusSpec rs;
            rs.articles = r.at("articles").get<std::size_t>();
            rs.chars = r.value("chars", std::size_t{500});
            rs.max_mentions = r.value("max_mentions", std::size_t{3});
            if (r.contains("start")) rs.start = parse_date(r["start"].get<std::string>());
            if (r.contains("end")) rs.end = parse_date(r["end"].get<std::string>());
            spec.random = rs;
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed synthetic spec: ") + e.what());
    }
    return spec;
}

SynthSpec load_synth_spec(const std::filesystem::path& path) {
    return parse_synth_spec(read_text_file(path), path.parent_path());
}

std::string pattern_config_json(const std::vector<EntityPatternSet>& sets) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& s : sets) {
        arr.push_back({{"label", s.label}, {"patterns", s.patterns}, {"case_sensitive", s.case_sensitive}, {"gsib", s.gsib}});
    }
    nlohmann::ordered_json doc;
    doc["entities"] = std::move(arr);
    return doc.dump(2) + "\n";
}

SynthResult generate_synthetic(const SynthSpec& spec, const std::function<void(const Article&)>& emit) {
    if (spec.entities.empty()) throw InputError("synthetic spec lists no entities");
    const PatternMatcher matcher(spec.pattern_sets());
    auto index_of = [&](const std::string& label) { return static_cast<std::size_t>(matcher.index_of(label)); };
    auto first_mention = [&](std::size_t e) -> const std::string& { return spec.entities[e].mentions.front(); };

    // Feasibility checks happen before any output is produced.
    for (const auto& pp : spec.periods) {
        if (pp.period.kind == PeriodKind::full_span) throw InputError("planted periods must be dated");
        for (const auto& item : pp.items) {
            std::set<std::string> distinct(item.members.begin(), item.members.end());
            for (const auto& m : item.members) index_of(m);
            switch (item.kind) {
            case PlantedItem::Kind::pair:
            case PlantedItem::Kind::repeat:
                if (item.members.size() != 2 || distinct.size() != 2)
                    throw InputError("synthetic spec: pair items need two distinct members");
                break;
            case PlantedItem::Kind::listing:
            case PlantedItem::Kind::crowd:
                if (item.members.size() < 2 || distinct.size() != item.members.size())
                    throw InputError("synthetic spec: listing members must be distinct");
                if (item.kind == PlantedItem::Kind::listing && item.members.size() > spec.max_entities)
                    throw InputError("synthetic spec: listing of " + std::to_string(item.members.size()) +
                                     " entities exceeds max_entities " + std::to_string(spec.max_entities) +
                                     " and cannot produce relations; plant it as a crowd");
                if (item.kind == PlantedItem::Kind::crowd && item.members.size() <= spec.max_entities)
                    throw InputError("synthetic spec: crowd items need more than max_entities members");
                break;
            case PlantedItem::Kind::single:
                if (item.members.size() != 1) throw InputError("synthetic spec: single items name one entity");
                break;
            }
            if (item.kind == PlantedItem::Kind::pair) {
                const std::size_t need = utf8_length(first_mention(index_of(item.members[0]))) + 1;
                if (item.distance < need)
                    throw InputError("synthetic spec: pair distance " + std::to_string(item.distance) +
                                     " is shorter than the first mention");
            }
            if (item.kind != PlantedItem::Kind::pair && item.kind != PlantedItem::Kind::single) {
                // Each mention followed by a two-character separator, last start within the window.
                std::size_t span = 0;
                const std::size_t n = item.kind == PlantedItem::Kind::repeat ? 3 : item.members.size();
                for (std::size_t k = 0; k + 1 < n; ++k) {
                    const auto& label = item.kind == PlantedItem::Kind::repeat ? item.members[k < 2 ? 0 : 1] : item.members[k];
                    span += utf8_length(first_mention(index_of(label))) + 2;
                }
                if (span > spec.window)
                    throw InputError("synthetic spec: item does not fit into one context window");
            }
        }
    }

    Rng rng(spec.seed);
    Writer writer(spec, rng);
    SynthResult result;
    std::size_t seq = 0;

    for (const auto& pp : spec.periods) {
        const std::string plabel = to_label(pp.period);
        for (const auto& item : pp.items) {
            std::vector<std::size_t> members;
            for (const auto& m : item.members) members.push_back(index_of(m));

            auto add = [&](std::size_t a, std::size_t b) {
                if (a > b) std::swap(a, b);
                result.expected[{plabel, spec.entities[a].label, spec.entities[b].label}] += 1;
            };

            for (std::size_t rep = 0; rep < item.count; ++rep) {
                TextBuilder tb;
                std::vector<Occurrence> planted;
                auto mention = [&](std::size_t e) {
                    planted.push_back({static_cast<EntityIndex>(e), tb.chars, utf8_length(first_mention(e))});
                    tb.append(first_mention(e));
                };
                writer.filler(tb, rng.between(2, 60));
                switch (item.kind) {
                case PlantedItem::Kind::pair:
                    mention(members[0]);
                    writer.filler(tb, item.distance - utf8_length(first_mention(members[0])));
                    mention(members[1]);
                    if (item.distance <= spec.window) add(members[0], members[1]);
                    break;
                case PlantedItem::Kind::repeat:
                    mention(members[0]);
                    writer.filler(tb, 2);
                    mention(members[0]);
                    writer.filler(tb, 2);
                    mention(members[1]);
                    add(members[0], members[1]);
                    break;
                case PlantedItem::Kind::listing:
                case PlantedItem::Kind::crowd:
                    for (std::size_t k = 0; k < members.size(); ++k) {
                        if (k) writer.filler(tb, 2);
                        mention(members[k]);
                    }
                    if (item.kind == PlantedItem::Kind::listing)
                        for (std::size_t a = 0; a < members.size(); ++a)
                            for (std::size_t b = a + 1; b < members.size(); ++b) add(members[a], members[b]);
                    break;
                case PlantedItem::Kind::single:
                    mention(members[0]);
                    break;
                }
                writer.filler(tb, rng.between(2, 60));

                Article a{make_id(++seq), random_day(rng, pp.period), std::move(tb.text)};
                auto found = matcher.scan(a.text);
                if (found != planted)
                    throw InputError("synthetic article " + a.id +
                                     ": detected mentions differ from the planted ones (check filler and patterns)");
                result.characters += tb.chars;
                ++result.articles;
                emit(a);
            }
        }
    }

    if (spec.random) {
        const auto& rs = *spec.random;
        const std::chrono::sys_days d0{rs.start}, d1{rs.end};
        if (d1 < d0) throw InputError("synthetic spec: random corpus end precedes start");
        const auto span = static_cast<std::size_t>((d1 - d0).count());
        for (std::size_t k = 0; k < rs.articles; ++k) {
            const std::size_t n_mentions = rng.below(rs.max_mentions + 1);
            std::vector<std::size_t> slots;
            for (std::size_t m = 0; m < n_mentions; ++m) slots.push_back(rng.below(rs.chars));
            std::sort(slots.begin(), slots.end());
            TextBuilder tb;
            std::size_t next = 0;
            while (tb.chars < rs.chars) {
                if (next < slots.size() && tb.chars >= slots[next]) {
                    const auto& e = spec.entities[rng.below(spec.entities.size())];
                    tb.append(e.mentions[rng.below(e.mentions.size())]);
                    tb.append(" ");
                    ++next;
                    continue;
                }
                tb.append(writer.words()[rng.below(writer.words().size())]);
                tb.append(" ");
            }
            const std::chrono::sys_days day = d0 + std::chrono::days{static_cast<long>(rng.below(span + 1))};
            result.characters += tb.chars;
            ++result.articles;
            emit(Article{make_id(++seq), std::chrono::year_month_day{day}, std::move(tb.text)});
        }
    }
    return result;
}

SynthResult generate_synthetic(const SynthSpec& spec, const std::filesystem::path& corpus_path) {
    if (corpus_path.has_parent_path()) std::filesystem::create_directories(corpus_path.parent_path());
    std::ofstream out(corpus_path, std::ios::binary);
    if (!out) throw Error("cannot write corpus '" + corpus_path.string() + "'");
    return generate_synthetic(spec, [&](const Article& a) { out << to_record(a) << '\n'; });
}

} // namespace textnet
