#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "textnet/cooccur.hpp"
#include "textnet/error.hpp"

using namespace textnet;

namespace {

constexpr EntityIndex A = 0, B = 1, C = 2, D = 3, E = 4, F = 5;

std::vector<Occurrence> occs(std::initializer_list<std::pair<EntityIndex, std::size_t>> list) {
    std::vector<Occurrence> out;
    for (auto [e, off] : list) out.push_back({e, off, 1});
    return out;
}

std::map<EntityPair, int> multiset(const std::vector<Relation>& rel) {
    std::map<EntityPair, int> out;
    for (const auto& r : rel) ++out[r.pair];
    return out;
}

std::vector<Occurrence> random_occurrences(std::mt19937_64& rng, int entities, int count, std::size_t length) {
    std::set<std::size_t> offsets;
    while (static_cast<int>(offsets.size()) < count) offsets.insert(rng() % length);
    std::vector<Occurrence> out;
    for (auto off : offsets) out.push_back({static_cast<EntityIndex>(rng() % entities), off, 1});
    return out;
}

} // namespace

TEST_CASE("two mentions inside the window form one context") {
    const auto o = occs({{A, 0}, {B, 100}});
    const auto cs = contexts(o, {});
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].members == std::vector<EntityIndex>{A, B});
    CHECK(multiset(extract(o, {})) == std::map<EntityPair, int>{{{A, B}, 1}});
}

TEST_CASE("window boundary is inclusive at 400") {
    const auto inside = occs({{A, 0}, {B, 400}});
    CHECK(extract(inside, {}).size() == 1);
    const auto outside = occs({{A, 0}, {B, 401}});
    const auto cs = contexts(outside, {});
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].members == std::vector<EntityIndex>{A});
    CHECK(cs[1].members == std::vector<EntityIndex>{B});
    CHECK(extract(outside, {}).empty());
}

TEST_CASE("repeated mentions count once per context") {
    const auto o = occs({{A, 0}, {A, 50}, {B, 100}});
    const auto cs = contexts(o, {});
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].members == std::vector<EntityIndex>{A, B});
    CHECK(extract(o, {}).size() == 1);
}

TEST_CASE("relations over members") {
    Context c;
    c.members = {A, B, C};
    const auto r = relations(c, {});
    CHECK(r == std::vector<EntityPair>{{A, B}, {A, C}, {B, C}});
    c.members = {A};
    CHECK(relations(c, {}).empty());
    c.members = {A, B, C, D, E};
    CHECK(relations(c, {}).size() == 10);
    c.members = {A, B, C, D, E, F};
    CHECK(relations(c, {}).empty());
}

TEST_CASE("disjoint sightings in one article count separately") {
    // B sits within reach of both A mentions, which are 450 apart.
    const auto o = occs({{A, 0}, {B, 100}, {A, 450}});
    CHECK(multiset(extract(o, {})) == std::map<EntityPair, int>{{{A, B}, 2}});
    ContextParams dedupe;
    dedupe.dedupe_per_article = true;
    CHECK(multiset(extract(o, dedupe)) == std::map<EntityPair, int>{{{A, B}, 1}});
    // With the last A at 600 the second window no longer reaches B.
    CHECK(multiset(extract(occs({{A, 0}, {B, 100}, {A, 600}}), {})) == std::map<EntityPair, int>{{{A, B}, 1}});
}

TEST_CASE("one entity mentioned many times yields nothing") {
    std::vector<Occurrence> o;
    for (std::size_t k = 0; k < 10; ++k) o.push_back({C, k * 37, 3});
    CHECK(extract(o, {}).empty());
}

TEST_CASE("crowded contexts are disqualified") {
    auto o = occs({{A, 0}, {B, 10}, {C, 20}, {D, 30}, {E, 40}, {F, 50}});
    CHECK(extract(o, {}).empty());
    ContextParams wide;
    wide.max_entities = 6;
    CHECK(extract(o, wide).size() == 15);
    o.pop_back();
    CHECK(extract(o, {}).size() == 10);
}

TEST_CASE("parameter validation") {
    ContextParams p;
    p.window = 0;
    CHECK_THROWS_AS(p.validate(), InputError);
    p.window = 10;
    p.max_entities = 1;
    CHECK_THROWS_AS(p.validate(), InputError);
}

TEST_CASE("every relation is backed by two mentions within the window") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 300; ++round) {
        const auto o = random_occurrences(rng, 6, 1 + static_cast<int>(rng() % 12), 1500);
        ContextParams p;
        p.window = 50 + rng() % 500;
        for (const auto& r : extract(o, p)) {
            bool found = false;
            for (const auto& x : o)
                for (const auto& y : o)
                    if (x.entity == r.pair.first && y.entity == r.pair.second &&
                        (x.offset > y.offset ? x.offset - y.offset : y.offset - x.offset) <= p.window &&
                        x.offset >= r.span_start && x.offset <= r.span_end && y.offset >= r.span_start &&
                        y.offset <= r.span_end)
                        found = true;
            REQUIRE(found);
        }
    }
}

TEST_CASE("unbounded window and size degenerate to article-level co-occurrence") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 200; ++round) {
        const auto o = random_occurrences(rng, 8, 1 + static_cast<int>(rng() % 15), 3000);
        ContextParams p;
        p.window = unlimited;
        p.max_entities = unlimited;
        std::set<EntityIndex> present;
        for (const auto& x : o) present.insert(x.entity);
        std::map<EntityPair, int> expected;
        for (auto a : present)
            for (auto b : present)
                if (a < b) expected[{a, b}] = 1;
        CHECK(multiset(extract(o, p)) == expected);
    }
}

TEST_CASE("widening the window never loses a pair when size is unbounded") {
    std::mt19937_64 rng(29);
    for (int round = 0; round < 300; ++round) {
        const auto o = random_occurrences(rng, 6, 1 + static_cast<int>(rng() % 12), 2000);
        std::set<EntityPair> previous;
        for (std::size_t w : {10u, 50u, 100u, 200u, 400u, 800u, 1600u, 4000u}) {
            ContextParams p;
            p.window = w;
            p.max_entities = unlimited;
            std::set<EntityPair> now;
            for (const auto& r : extract(o, p)) now.insert(r.pair);
            for (const auto& pair : previous) REQUIRE(now.count(pair) == 1);
            previous = std::move(now);
        }
    }
}

TEST_CASE("widening the window can merge two sightings into one") {
    const auto o = occs({{A, 0}, {B, 100}, {A, 450}});
    ContextParams narrow, wide;
    wide.window = 1000;
    CHECK(extract(o, narrow).size() == 2);
    CHECK(extract(o, wide).size() == 1);
}

TEST_CASE("contexts are maximal and cover every occurrence") {
    std::mt19937_64 rng(31);
    for (int round = 0; round < 300; ++round) {
        const auto o = random_occurrences(rng, 5, 1 + static_cast<int>(rng() % 20), 2000);
        ContextParams p;
        p.window = 20 + rng() % 400;
        const auto cs = contexts(o, p);
        std::vector<bool> covered(o.size(), false);
        for (std::size_t k = 0; k < cs.size(); ++k) {
            for (std::size_t i = cs[k].first; i <= cs[k].last; ++i) covered[i] = true;
            if (k > 0) {
                // Neither range contains the other.
                CHECK(cs[k].first > cs[k - 1].first);
                CHECK(cs[k].last > cs[k - 1].last);
            }
        }
        for (bool b : covered) CHECK(b);
    }
}
