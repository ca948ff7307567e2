#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "textnet/cooccur.hpp"
#include "textnet/period.hpp"

namespace textnet {

/// Weighted undirected network for one period over a fixed node universe.
/// `weights` is symmetric with a zero diagonal.
struct CrossSectionNetwork {
    Period period;
    std::vector<std::string> nodes;
    Eigen::MatrixXd weights;

    std::size_t size() const { return nodes.size(); }
    /// Sum of the upper triangle.
    double total_weight() const;
};

struct SmoothingParams {
    double alpha = 1.0;
};

using LabelPair = std::pair<std::string, std::string>;

/// Counts each relation into w_ij. Nodes without relations stay as zero rows.
CrossSectionNetwork aggregate(std::span<const LabelPair> relations, const Period& period,
                              std::vector<std::string> node_universe);

/// w'_ij = w_ij + alpha for every off-diagonal pair.
CrossSectionNetwork smooth(const CrossSectionNetwork& net, const SmoothingParams& params);

/// Zeroes every link with weight <= min_weight.
CrossSectionNetwork filter_weak_links(const CrossSectionNetwork& net, double min_weight);

/// Throws InputError unless the matrix is square, symmetric, nonnegative and
/// has a zero diagonal.
void validate_weights(const Eigen::MatrixXd& w);

/// Accumulates pair counts per period and emits a gap-free series.
class DynamicNetworkBuilder {
public:
    DynamicNetworkBuilder(std::vector<std::string> node_universe, PeriodKind kind);

    void add(const Period& period, EntityPair pair, std::uint64_t count = 1);
    /// Registers a period as present in the corpus even if it has no relations.
    void touch(const Period& period);
    /// Elementwise sum of another builder over the same universe.
    void merge(const DynamicNetworkBuilder& other);

    /// One network per period from the first to the last seen, gaps as zero networks.
    std::vector<CrossSectionNetwork> networks() const;

    /// Nonzero counts in (period, pair) order.
    std::vector<std::pair<Period, std::pair<EntityPair, std::uint64_t>>> counts() const;

    const std::vector<std::string>& nodes() const { return nodes_; }
    PeriodKind kind() const { return kind_; }

private:
    std::vector<std::string> nodes_;
    PeriodKind kind_;
    std::map<Period, std::map<EntityPair, std::uint64_t>> counts_;
};

} // namespace textnet
