#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "textnet/netbuild.hpp"
#include "textnet/period.hpp"

namespace textnet {

Eigen::VectorXd strength(const CrossSectionNetwork& net);
/// Number of links with weight strictly above `min_weight`.
std::vector<int> degree(const CrossSectionNetwork& net, double min_weight = 0.0);

/// d_ij = 1 / w_ij, +inf where there is no link.
Eigen::MatrixXd invert_weights(const CrossSectionNetwork& net);

/// All-pairs Dijkstra over inverted weights. Unreachable pairs are +inf.
Eigen::MatrixXd shortest_paths(const CrossSectionNetwork& net);

/// Mean hop count over connected unordered pairs, treating links with weight
/// above `min_weight` as present. Throws when no pair is connected.
double avg_binary_distance(const CrossSectionNetwork& net, double min_weight = 0.0);

/// r_i / sum_j d_ij over the r_i nodes reachable from i; 0 when r_i = 0.
Eigen::VectorXd closeness(const CrossSectionNetwork& net);
/// Brandes betweenness on inverted weights; each unordered pair counted once.
Eigen::VectorXd betweenness(const CrossSectionNetwork& net);

/// How information centrality treats a network whose B matrix is singular
/// because the network is disconnected.
enum class ComponentPolicy {
    /// Reject with NumericalError.
    strict,
    /// Evaluate the largest connected component on its own; every other
    /// node scores 0.
    largest_component,
};

struct InformationCentralityOptions {
    /// Reject B when its estimated condition number exceeds this.
    double max_condition = 1e12;
    /// Reject the inverse when max |B*C - I| exceeds this.
    double max_residual = 1e-8;
    ComponentPolicy components = ComponentPolicy::strict;
};

struct InformationCentralityResult {
    Eigen::VectorXd values;
    /// Condition estimate and inversion residual of the (last) factorized B.
    double condition = 0.0;
    double residual = 0.0;
    /// Nodes that were part of the evaluated component.
    std::vector<bool> evaluated;
};

/// Information (current-flow closeness) centrality.
///
/// With B_ii = 1 + S(i), B_ij = 1 - w_ij and C = B^-1,
///   I(i) = n / (n C_ii + sum_j C_jj - 2 sum_j C_ij).
/// B is factorized once and C reused for every node.
InformationCentralityResult information_centrality_detail(const Eigen::MatrixXd& weights,
                                                          const InformationCentralityOptions& opts = {});
Eigen::VectorXd information_centrality(const CrossSectionNetwork& net, const InformationCentralityOptions& opts = {});

/// Connected components over links with positive weight; labels are dense
/// and numbered in order of each component's smallest node.
std::vector<int> connected_components(const Eigen::MatrixXd& weights);

struct CentralityPanel {
    std::vector<Period> periods;
    std::vector<std::string> nodes;
    /// |T| x n information centrality I_t(i).
    Eigen::MatrixXd values;
    /// values min-max normalized jointly over all periods and nodes.
    Eigen::MatrixXd normalized;
    double alpha = 0.0;
    /// Set when every value is equal; `normalized` is then all zeros.
    bool flat = false;
};

/// Smooths each cross section with `alpha`, computes information centrality
/// and normalizes the whole panel jointly.
CentralityPanel centrality_panel(std::span<const CrossSectionNetwork> networks, double alpha,
                                 ComponentPolicy components = ComponentPolicy::largest_component);

/// Mean over nodes of the population variance of each node's series (|T| >= 2).
double variance_over_time(const Eigen::MatrixXd& normalized);
/// (1/|T|) sum_t (1/n) sum_i (I'_t(i) - mu_i)^2 with mu_i the node's mean over time (n >= 2).
double variance_across_nodes(const Eigen::MatrixXd& normalized);

struct DistributionPoint {
    double x = 0.0;
    /// Fraction of values >= x.
    double p = 0.0;
};

/// Empirical complementary cumulative distribution at each distinct value.
std::vector<DistributionPoint> cumulative_distribution(std::span<const double> values);
std::vector<DistributionPoint> strength_distribution(const CrossSectionNetwork& net);

enum class DistributionModel { exponential, power_law };

struct DistributionFit {
    DistributionModel model = DistributionModel::exponential;
    /// p(x) ~ scale * exp(-rate x)  or  p(x) ~ scale * x^(-rate)
    double scale = 0.0;
    double rate = 0.0;
    double range_lo = 0.0;
    double range_hi = 0.0;
    /// Sum of squared errors in log p.
    double residual = 0.0;
    std::size_t points = 0;
};

/// Least-squares line in log space over the points with x in [lo, hi].
DistributionFit fit_distribution(std::span<const DistributionPoint> points, DistributionModel model,
                                 double lo = -std::numeric_limits<double>::infinity(),
                                 double hi = std::numeric_limits<double>::infinity());

} // namespace textnet
