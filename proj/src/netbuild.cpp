#include "textnet/netbuild.hpp"

#include <unordered_map>

#include "textnet/error.hpp"

namespace textnet {

double CrossSectionNetwork::total_weight() const {
    return weights.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().sum();
}

CrossSectionNetwork aggregate(std::span<const LabelPair> relations, const Period& period,
                              std::vector<std::string> node_universe) {
    std::unordered_map<std::string, Eigen::Index> index;
    for (std::size_t i = 0; i < node_universe.size(); ++i) {
        if (!index.emplace(node_universe[i], static_cast<Eigen::Index>(i)).second)
            throw InputError("duplicate node '" + node_universe[i] + "'");
    }
    const auto n = static_cast<Eigen::Index>(node_universe.size());
    CrossSectionNetwork net{period, std::move(node_universe), Eigen::MatrixXd::Zero(n, n)};
    auto lookup = [&](const std::string& label) {
        auto it = index.find(label);
        if (it == index.end()) throw InputError("relation names unknown entity '" + label + "'");
        return it->second;
    };
    for (const auto& [a, b] : relations) {
        const auto i = lookup(a), j = lookup(b);
        if (i == j) throw InputError("self relation for entity '" + a + "'");
        net.weights(i, j) += 1.0;
        net.weights(j, i) += 1.0;
    }
    return net;
}

CrossSectionNetwork smooth(const CrossSectionNetwork& net, const SmoothingParams& params) {
    if (!(params.alpha >= 0.0)) throw InputError("smoothing alpha must be nonnegative");
    CrossSectionNetwork out = net;
    out.weights.array() += params.alpha;
    out.weights.diagonal().setZero();
    return out;
}

CrossSectionNetwork filter_weak_links(const CrossSectionNetwork& net, double min_weight) {
    CrossSectionNetwork out = net;
    out.weights = (net.weights.array() > min_weight).select(net.weights, 0.0);
    return out;
}

void validate_weights(const Eigen::MatrixXd& w) {
    if (w.rows() != w.cols()) throw InputError("weight matrix is not square");
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
        if (w(i, i) != 0.0) throw InputError("weight matrix has a nonzero diagonal");
        for (Eigen::Index j = 0; j < i; ++j) {
            if (w(i, j) != w(j, i)) throw InputError("weight matrix is not symmetric");
            if (!(w(i, j) >= 0.0)) throw InputError("weight matrix has a negative or NaN entry");
        }
    }
}

DynamicNetworkBuilder::DynamicNetworkBuilder(std::vector<std::string> node_universe, PeriodKind kind)
    : nodes_(std::move(node_universe)), kind_(kind) {}

void DynamicNetworkBuilder::touch(const Period& period) {
    if (period.kind != kind_) throw Error("period kind does not match the builder");
    counts_.try_emplace(period);
}

void DynamicNetworkBuilder::add(const Period& period, EntityPair pair, std::uint64_t count) {
    if (pair.second >= nodes_.size() || pair.first >= pair.second)
        throw InputError("invalid entity pair");
    touch(period);
    counts_[period][pair] += count;
}

void DynamicNetworkBuilder::merge(const DynamicNetworkBuilder& other) {
    if (other.nodes_ != nodes_ || other.kind_ != kind_) throw Error("cannot merge builders over different universes");
    for (const auto& [period, pairs] : other.counts_) {
        auto& mine = counts_[period];
        for (const auto& [pair, c] : pairs) mine[pair] += c;
    }
}

std::vector<CrossSectionNetwork> DynamicNetworkBuilder::networks() const {
    std::vector<CrossSectionNetwork> out;
    if (counts_.empty()) return out;
    const auto n = static_cast<Eigen::Index>(nodes_.size());
    for (const auto& p : period_range(counts_.begin()->first, counts_.rbegin()->first)) {
        CrossSectionNetwork net{p, nodes_, Eigen::MatrixXd::Zero(n, n)};
        if (auto it = counts_.find(p); it != counts_.end()) {
            for (const auto& [pair, c] : it->second) {
                net.weights(pair.first, pair.second) = static_cast<double>(c);
                net.weights(pair.second, pair.first) = static_cast<double>(c);
            }
        }
        out.push_back(std::move(net));
    }
    return out;
}

std::vector<std::pair<Period, std::pair<EntityPair, std::uint64_t>>> DynamicNetworkBuilder::counts() const {
    std::vector<std::pair<Period, std::pair<EntityPair, std::uint64_t>>> out;
    for (const auto& [period, pairs] : counts_)
        for (const auto& [pair, c] : pairs) out.push_back({period, {pair, c}});
    return out;
}

} // namespace textnet
