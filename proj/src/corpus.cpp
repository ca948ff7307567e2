#include "textnet/corpus.hpp"

#include <charconv>
#include <cstdio>

#include <json.hpp>

#include "textnet/error.hpp"

namespace textnet {

namespace {

std::string at_line(std::size_t line_no, const std::string& msg) {
    return "line " + std::to_string(line_no) + ": " + msg;
}

int digits(std::string_view s, std::size_t pos, std::size_t n, std::string_view whole) {
    int v = 0;
    const char* b = s.data() + pos;
    auto [ptr, ec] = std::from_chars(b, b + n, v);
    if (ec != std::errc{} || ptr != b + n)
        throw InputError("invalid date '" + std::string(whole) + "'");
    return v;
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::chrono::year_month_day parse_date(std::string_view s) {
    if (s.size() < 10 || s[4] != '-' || s[7] != '-' || (s.size() > 10 && s[10] != 'T' && s[10] != ' '))
        throw InputError("invalid date '" + std::string(s) + "'");
    const std::chrono::year_month_day d{std::chrono::year{digits(s, 0, 4, s)},
                                        std::chrono::month{static_cast<unsigned>(digits(s, 5, 2, s))},
                                        std::chrono::day{static_cast<unsigned>(digits(s, 8, 2, s))}};
    if (!d.ok()) throw InputError("invalid date '" + std::string(s) + "'");
    return d;
}

std::string format_date(std::chrono::year_month_day d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

Article parse_article(std::string_view line, std::size_t line_no) {
    nlohmann::json rec;
    try {
        rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(at_line(line_no, std::string("malformed record: ") + e.what()));
    }
    if (!rec.is_object()) throw InputError(at_line(line_no, "record is not an object"));
    for (const char* field : {"id", "timestamp", "text"}) {
        auto it = rec.find(field);
        if (it == rec.end()) throw InputError(at_line(line_no, std::string("missing field ") + field));
        if (!it->is_string()) throw InputError(at_line(line_no, std::string("field ") + field + " is not a string"));
    }
    Article a;
    a.id = rec["id"].get<std::string>();
    if (a.id.empty()) throw InputError(at_line(line_no, "empty id"));
    try {
        a.date = parse_date(rec["timestamp"].get_ref<const std::string&>());
    } catch (const InputError& e) {
        throw InputError(at_line(line_no, e.what()));
    }
    a.text = std::move(rec["text"].get_ref<std::string&>());
    return a;
}

std::string to_record(const Article& a) {
    nlohmann::ordered_json rec;
    rec["id"] = a.id;
    rec["timestamp"] = format_date(a.date);
    rec["text"] = a.text;
    return rec.dump();
}

CorpusReader::CorpusReader(const std::filesystem::path& path) : in_(path) {
    if (!in_) throw InputError("cannot open corpus '" + path.string() + "'");
}

std::optional<Article> CorpusReader::next() {
    while (std::getline(in_, buffer_)) {
        ++line_no_;
        if (!buffer_.empty() && buffer_.back() == '\r') buffer_.pop_back();
        if (buffer_.find_first_not_of(" \t") == std::string::npos) continue;
        Article a = parse_article(buffer_, line_no_);
        if (!seen_.insert(a.id).second)
            throw InputError(at_line(line_no_, "duplicate article id '" + a.id + "'"));
        return a;
    }
    return std::nullopt;
}

std::vector<Article> read_corpus(const std::filesystem::path& path) {
    CorpusReader reader(path);
    std::vector<Article> out;
    while (auto a = reader.next()) out.push_back(std::move(*a));
    return out;
}

void SampleSpec::validate() const {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw InputError("sample fraction must lie in (0, 1], got " + std::to_string(fraction));
}

double stable_uniform(std::uint64_t seed, std::string_view key) {
    const std::uint64_t h = splitmix64(fnv1a(key) ^ splitmix64(seed));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

bool SampleSpec::includes(std::string_view article_id) const {
    if (fraction >= 1.0) return true;
    return stable_uniform(seed, article_id) < fraction;
}

std::vector<Article> sample(const std::vector<Article>& corpus, const SampleSpec& spec) {
    spec.validate();
    std::vector<Article> out;
    for (const auto& a : corpus)
        if (spec.includes(a.id)) out.push_back(a);
    return out;
}

} // namespace textnet
