#include <doctest.h>

#include <cmath>
#include <fstream>

#include "oracles.hpp"
#include "textnet/corpus.hpp"
#include "textnet/error.hpp"

using namespace textnet;
using namespace std::chrono;

namespace {

void write(const std::filesystem::path& p, const std::string& content) {
    std::ofstream(p, std::ios::binary) << content;
}

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("reads records in order") {
    oracle::TempDir dir("corpus");
    write(dir / "c.jsonl", R"({"id":"a1","timestamp":"2008-02-14","text":"first\nline"})"
                           "\n"
                           R"({"id":"a2","timestamp":"2008-03-01T10:22:00Z","text":"Crédit Agricole"})"
                           "\n");
    const auto articles = read_corpus(dir / "c.jsonl");
    REQUIRE(articles.size() == 2);
    CHECK(articles[0].id == "a1");
    CHECK(articles[0].text == "first\nline");
    CHECK(articles[0].date == 2008y / February / 14d);
    CHECK(articles[1].id == "a2");
    CHECK(articles[1].date == 2008y / March / 1d);
    CHECK(articles[1].text == "Crédit Agricole");
}

TEST_CASE("empty file yields nothing") {
    oracle::TempDir dir("corpus");
    write(dir / "empty.jsonl", "");
    CorpusReader reader(dir / "empty.jsonl");
    CHECK_FALSE(reader.next().has_value());
    write(dir / "blank.jsonl", "\n  \n\n");
    CHECK(read_corpus(dir / "blank.jsonl").empty());
}

TEST_CASE("malformed records name their line") {
    oracle::TempDir dir("corpus");
    std::string content;
    for (int i = 1; i <= 6; ++i)
        content += R"({"id":"x)" + std::to_string(i) + R"(","timestamp":"2009-01-01","text":"t"})" + "\n";
    content += R"({"id":"x7","text":"no date"})" "\n";
    write(dir / "c.jsonl", content);
    CHECK(error_of([&] { read_corpus(dir / "c.jsonl"); }) == "line 7: missing field timestamp");

    CHECK(error_of([] { parse_article("{not json", 3); }).rfind("line 3:", 0) == 0);
    CHECK(error_of([] { parse_article(R"({"id":"a","timestamp":"2009-13-01","text":""})", 4); }).find("line 4") == 0);
    CHECK(error_of([] { parse_article(R"({"id":5,"timestamp":"2009-01-01","text":""})", 1); }).find("id") != std::string::npos);
}

TEST_CASE("duplicate ids are rejected by name") {
    oracle::TempDir dir("corpus");
    write(dir / "c.jsonl", R"({"id":"dup","timestamp":"2009-01-01","text":"a"})"
                           "\n"
                           R"({"id":"dup","timestamp":"2009-01-02","text":"b"})"
                           "\n");
    const auto msg = error_of([&] { read_corpus(dir / "c.jsonl"); });
    CHECK(msg.find("'dup'") != std::string::npos);
    CHECK(msg.find("line 2") != std::string::npos);
}

TEST_CASE("missing corpus file") {
    CHECK_THROWS_AS(CorpusReader("/nonexistent/corpus.jsonl"), InputError);
}

TEST_CASE("records round-trip") {
    const Article a{"id-1", 2012y / July / 9d, "quote \" backslash \\ newline \n unicode ü"};
    const Article b = parse_article(to_record(a), 1);
    CHECK(b.id == a.id);
    CHECK(b.date == a.date);
    CHECK(b.text == a.text);
    CHECK(to_record(a).find('\n') == std::string::npos);
}

namespace {

std::vector<Article> make_articles(std::size_t n) {
    std::vector<Article> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back({"doc-" + std::to_string(i), 2010y / May / 5d, ""});
    return out;
}

} // namespace

TEST_CASE("sampling") {
    const auto corpus = make_articles(10000);
    SUBCASE("fraction 1 keeps everything") {
        CHECK(sample(corpus, {1.0, 7}).size() == corpus.size());
    }
    SUBCASE("deterministic for a fixed seed") {
        const auto a = sample(corpus, {0.45, 11});
        const auto b = sample(corpus, {0.45, 11});
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].id == b[i].id);
        const auto c = sample(corpus, {0.45, 12});
        bool differs = c.size() != a.size();
        for (std::size_t i = 0; !differs && i < a.size(); ++i) differs = a[i].id != c[i].id;
        CHECK(differs);
    }
    SUBCASE("count is binomial") {
        for (std::uint64_t seed : {1u, 2u, 3u, 99u}) {
            const double k = static_cast<double>(sample(corpus, {0.45, seed}).size());
            const double sd = std::sqrt(10000 * 0.45 * 0.55);
            CHECK(std::fabs(k - 4500.0) < 3.0 * sd);
        }
    }
    SUBCASE("idempotent and order preserving") {
        const SampleSpec spec{0.3, 5};
        const auto once = sample(corpus, spec);
        const auto twice = sample(once, spec);
        REQUIRE(once.size() == twice.size());
        std::size_t pos = 0;
        for (const auto& a : once) {
            while (pos < corpus.size() && corpus[pos].id != a.id) ++pos;
            REQUIRE(pos < corpus.size());
        }
        for (std::size_t i = 0; i < once.size(); ++i) CHECK(once[i].id == twice[i].id);
    }
    SUBCASE("nested fractions give nested subsets") {
        const auto small = sample(corpus, {0.2, 4});
        for (const auto& a : small) CHECK(SampleSpec{0.5, 4}.includes(a.id));
    }
    SUBCASE("fraction out of range") {
        CHECK_THROWS_AS(sample(corpus, {0.0, 1}), InputError);
        CHECK_THROWS_AS(sample(corpus, {1.5, 1}), InputError);
        CHECK_THROWS_AS(sample(corpus, {-0.1, 1}), InputError);
    }
}

TEST_CASE("stable_uniform is in [0,1) and roughly uniform") {
    int buckets[10] = {};
    for (int i = 0; i < 20000; ++i) {
        const double u = stable_uniform(3, "k" + std::to_string(i));
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        ++buckets[static_cast<int>(u * 10)];
    }
    for (int b : buckets) CHECK(std::abs(b - 2000) < 200);
}
