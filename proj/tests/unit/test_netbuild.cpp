#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "textnet/error.hpp"
#include "textnet/netbuild.hpp"

using namespace textnet;

namespace {

const std::vector<std::string> kNodes = {"A", "B", "C", "D"};
const Period kQ = parse_period("2007Q1");

} // namespace

TEST_CASE("aggregate counts relations") {
    const std::vector<LabelPair> rel = {{"A", "B"}, {"B", "A"}, {"A", "B"}, {"C", "B"}};
    const auto net = aggregate(rel, kQ, {"A", "B", "C"});
    CHECK(net.weights(0, 1) == 3);
    CHECK(net.weights(1, 0) == 3);
    CHECK(net.weights(1, 2) == 1);
    CHECK(net.weights(0, 2) == 0);
    CHECK(net.total_weight() == 4);
    CHECK_NOTHROW(validate_weights(net.weights));
}

TEST_CASE("empty multiset gives the zero matrix over the full universe") {
    const auto net = aggregate({}, kQ, kNodes);
    CHECK(net.size() == 4);
    CHECK(net.weights.isZero());
}

TEST_CASE("aggregate rejects unknown entities and self pairs") {
    const std::vector<LabelPair> unknown = {{"A", "Z"}};
    CHECK_THROWS_AS(aggregate(unknown, kQ, kNodes), InputError);
    const std::vector<LabelPair> self = {{"A", "A"}};
    CHECK_THROWS_AS(aggregate(self, kQ, kNodes), InputError);
    CHECK_THROWS_AS(aggregate({}, kQ, {"A", "A"}), InputError);
}

TEST_CASE("smoothing") {
    const std::vector<LabelPair> rel(5, LabelPair{"A", "B"});
    const auto net = aggregate(rel, kQ, {"A", "B", "C"});
    SUBCASE("alpha zero is the identity") {
        CHECK(smooth(net, {0.0}).weights == net.weights);
    }
    SUBCASE("adds alpha to every pair") {
        const auto s = smooth(net, {0.2});
        CHECK(s.weights(0, 1) == doctest::Approx(5.2).epsilon(1e-15));
        CHECK(s.weights(0, 2) == 0.2);
        CHECK(s.weights(1, 2) == 0.2);
        CHECK(s.weights.diagonal().isZero());
    }
    SUBCASE("two isolated nodes become linked") {
        const auto s = smooth(aggregate({}, kQ, {"A", "B"}), {1.0});
        CHECK(s.weights(0, 1) == 1.0);
        CHECK(s.weights(1, 0) == 1.0);
    }
    SUBCASE("negative alpha") {
        CHECK_THROWS_AS(smooth(net, {-0.5}), InputError);
    }
}

TEST_CASE("smoothing preserves symmetry and shifts strength by (n-1) alpha") {
    std::mt19937_64 rng(3);
    for (int round = 0; round < 50; ++round) {
        const int n = 2 + static_cast<int>(rng() % 12);
        CrossSectionNetwork net{kQ, {}, oracle::random_weights(rng, n, 0.4, 1.0, 20.0)};
        for (int i = 0; i < n; ++i) net.nodes.push_back("n" + std::to_string(i));
        const double alpha = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
        const auto s = smooth(net, {alpha});
        CHECK_NOTHROW(validate_weights(s.weights));
        for (int i = 0; i < n; ++i)
            CHECK(s.weights.row(i).sum() == doctest::Approx(net.weights.row(i).sum() + (n - 1) * alpha).epsilon(1e-12));
    }
}

TEST_CASE("weak-link filter") {
    CrossSectionNetwork net{kQ, {"A", "B", "C"}, Eigen::MatrixXd::Zero(3, 3)};
    net.weights(0, 1) = net.weights(1, 0) = 0.2;
    net.weights(1, 2) = net.weights(2, 1) = 3.0;
    const auto f = filter_weak_links(net, 0.5);
    CHECK(f.weights(0, 1) == 0.0);
    CHECK(f.weights(1, 2) == 3.0);
    CHECK(filter_weak_links(net, 0.0).weights == net.weights);
}

TEST_CASE("validate_weights") {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2, 2);
    CHECK_NOTHROW(validate_weights(w));
    w(0, 1) = 1.0;
    CHECK_THROWS_AS(validate_weights(w), InputError);
    w(1, 0) = 1.0;
    w(0, 0) = 1.0;
    CHECK_THROWS_AS(validate_weights(w), InputError);
    CHECK_THROWS_AS(validate_weights(Eigen::MatrixXd::Zero(2, 3)), InputError);
    Eigen::MatrixXd neg = Eigen::MatrixXd::Zero(2, 2);
    neg(0, 1) = neg(1, 0) = -1.0;
    CHECK_THROWS_AS(validate_weights(neg), InputError);
}

TEST_CASE("dynamic builder fills gaps") {
    DynamicNetworkBuilder b(kNodes, PeriodKind::quarter);
    b.add(parse_period("2009Q1"), EntityPair::of(0, 1), 2);
    b.add(parse_period("2009Q4"), EntityPair::of(3, 2));
    const auto nets = b.networks();
    REQUIRE(nets.size() == 4);
    CHECK(to_label(nets[1].period) == "2009Q2");
    CHECK(nets[1].weights.isZero());
    CHECK(nets[0].weights(1, 0) == 2);
    CHECK(nets[3].weights(2, 3) == 1);
    CHECK(b.counts().size() == 2);
}

TEST_CASE("dynamic builder over the study span") {
    DynamicNetworkBuilder b(kNodes, PeriodKind::quarter);
    b.touch(parse_period("2007Q1"));
    b.add(parse_period("2014Q3"), EntityPair::of(0, 2));
    CHECK(b.networks().size() == 31);

    DynamicNetworkBuilder single(kNodes, PeriodKind::quarter);
    single.add(parse_period("2011Q2"), EntityPair::of(0, 1));
    CHECK(single.networks().size() == 1);

    DynamicNetworkBuilder none(kNodes, PeriodKind::quarter);
    CHECK(none.networks().empty());

    CHECK_THROWS(b.add(parse_period("2009-01"), EntityPair::of(0, 1)));
    CHECK_THROWS(b.add(parse_period("2009Q1"), EntityPair{1, 1}));
    CHECK_THROWS(b.add(parse_period("2009Q1"), EntityPair{0, 9}));
}

TEST_CASE("merge is elementwise addition") {
    std::mt19937_64 rng(9);
    const auto periods = period_range(parse_period("2008Q1"), parse_period("2009Q4"));
    DynamicNetworkBuilder whole(kNodes, PeriodKind::quarter), left(kNodes, PeriodKind::quarter),
        right(kNodes, PeriodKind::quarter);
    for (int k = 0; k < 500; ++k) {
        const auto& p = periods[rng() % periods.size()];
        const auto a = static_cast<EntityIndex>(rng() % 4);
        auto c = static_cast<EntityIndex>(rng() % 4);
        if (c == a) c = (c + 1) % 4;
        const auto pair = EntityPair::of(a, c);
        whole.add(p, pair);
        (rng() % 2 ? left : right).add(p, pair);
    }
    DynamicNetworkBuilder merged = right;
    merged.merge(left);
    const auto x = whole.networks(), y = merged.networks();
    REQUIRE(x.size() == y.size());
    double total = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        CHECK(x[t].period == y[t].period);
        CHECK(x[t].weights == y[t].weights);
        total += x[t].total_weight();
    }
    CHECK(total == 500.0);
    CHECK_THROWS(merged.merge(DynamicNetworkBuilder({"A", "B"}, PeriodKind::quarter)));
}
