#include "textnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <stack>

#include "textnet/error.hpp"

namespace textnet {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

using Index = Eigen::Index;

struct Dijkstra {
    Eigen::VectorXd dist;
    std::vector<std::vector<Index>> preds;
    std::vector<double> sigma;
    std::vector<Index> order;
};

bool same_cost(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

// Single-source Dijkstra over distances `d`, tracking shortest-path counts
// and predecessors for Brandes accumulation.
Dijkstra run_dijkstra(const Eigen::MatrixXd& d, Index source) {
    const Index n = d.rows();
    Dijkstra r{Eigen::VectorXd::Constant(n, inf), std::vector<std::vector<Index>>(n), std::vector<double>(n, 0.0), {}};
    std::vector<bool> done(n, false);
    using Item = std::pair<double, Index>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    r.dist[source] = 0.0;
    r.sigma[source] = 1.0;
    pq.push({0.0, source});
    while (!pq.empty()) {
        auto [du, u] = pq.top();
        pq.pop();
        if (done[u] || du > r.dist[u]) continue;
        done[u] = true;
        r.order.push_back(u);
        for (Index v = 0; v < n; ++v) {
            if (v == u || done[v] || !std::isfinite(d(u, v))) continue;
            const double alt = du + d(u, v);
            if (r.dist[v] < inf && same_cost(alt, r.dist[v])) {
                r.sigma[v] += r.sigma[u];
                r.preds[v].push_back(u);
            } else if (alt < r.dist[v]) {
                r.dist[v] = alt;
                r.sigma[v] = r.sigma[u];
                r.preds[v].assign(1, u);
                pq.push({alt, v});
            }
        }
    }
    return r;
}

Eigen::VectorXd solve_dense(const Eigen::MatrixXd& w, const InformationCentralityOptions& opts,
                            double& condition, double& residual) {
    const Index n = w.rows();
    const Eigen::VectorXd s = w.rowwise().sum();
    Eigen::MatrixXd b = Eigen::MatrixXd::Ones(n, n) - w;
    b.diagonal() = (s.array() + 1.0).matrix();

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    const double rcond = lu.rcond();
    condition = rcond > 0.0 ? 1.0 / rcond : inf;
    if (!(condition <= opts.max_condition))
        throw NumericalError("information centrality: B is singular or ill-conditioned (condition estimate " +
                             std::to_string(condition) + ")");
    const Eigen::MatrixXd c = lu.inverse();
    residual = (b * c - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (!(residual <= opts.max_residual))
        throw NumericalError("information centrality: inversion residual " + std::to_string(residual) +
                             " exceeds tolerance");

    const double trace = c.trace();
    const Eigen::VectorXd row_sums = c.rowwise().sum();
    Eigen::VectorXd out(n);
    for (Index i = 0; i < n; ++i) {
        const double denom = static_cast<double>(n) * c(i, i) + trace - 2.0 * row_sums[i];
        out[i] = static_cast<double>(n) / denom;
    }
    if (!out.allFinite()) throw NumericalError("information centrality: non-finite result");
    return out;
}

} // namespace

Eigen::VectorXd strength(const CrossSectionNetwork& net) { return net.weights.rowwise().sum(); }

std::vector<int> degree(const CrossSectionNetwork& net, double min_weight) {
    if (min_weight < 0.0) throw InputError("min_weight must be nonnegative");
    std::vector<int> out(net.size(), 0);
    for (Index i = 0; i < net.weights.rows(); ++i)
        out[i] = static_cast<int>((net.weights.row(i).array() > min_weight).count());
    return out;
}

Eigen::MatrixXd invert_weights(const CrossSectionNetwork& net) {
    return (net.weights.array() > 0.0).select(net.weights.array().inverse(), inf).matrix();
}

Eigen::MatrixXd shortest_paths(const CrossSectionNetwork& net) {
    const Eigen::MatrixXd d = invert_weights(net);
    const Index n = d.rows();
    Eigen::MatrixXd out(n, n);
    for (Index s = 0; s < n; ++s) out.row(s) = run_dijkstra(d, s).dist.transpose();
    return out;
}

double avg_binary_distance(const CrossSectionNetwork& net, double min_weight) {
    const Index n = net.weights.rows();
    double total = 0.0;
    std::size_t pairs = 0;
    std::vector<int> hops(n);
    for (Index s = 0; s < n; ++s) {
        std::fill(hops.begin(), hops.end(), -1);
        std::queue<Index> q;
        hops[s] = 0;
        q.push(s);
        while (!q.empty()) {
            const Index u = q.front();
            q.pop();
            for (Index v = 0; v < n; ++v) {
                if (hops[v] < 0 && net.weights(u, v) > min_weight) {
                    hops[v] = hops[u] + 1;
                    q.push(v);
                }
            }
        }
        for (Index t = s + 1; t < n; ++t) {
            if (hops[t] > 0) {
                total += hops[t];
                ++pairs;
            }
        }
    }
    if (pairs == 0) throw InputError("average distance undefined: no connected node pairs");
    return total / static_cast<double>(pairs);
}

Eigen::VectorXd closeness(const CrossSectionNetwork& net) {
    const Eigen::MatrixXd d = shortest_paths(net);
    const Index n = d.rows();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (Index i = 0; i < n; ++i) {
        double sum = 0.0;
        int reach = 0;
        for (Index j = 0; j < n; ++j) {
            if (j != i && std::isfinite(d(i, j))) {
                sum += d(i, j);
                ++reach;
            }
        }
        if (reach > 0 && sum > 0.0) out[i] = reach / sum;
    }
    return out;
}

Eigen::VectorXd betweenness(const CrossSectionNetwork& net) {
    const Eigen::MatrixXd d = invert_weights(net);
    const Index n = d.rows();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    std::vector<double> delta(n);
    for (Index s = 0; s < n; ++s) {
        const Dijkstra r = run_dijkstra(d, s);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
            const Index w = *it;
            for (Index v : r.preds[w]) delta[v] += r.sigma[v] / r.sigma[w] * (1.0 + delta[w]);
            if (w != s) out[w] += delta[w];
        }
    }
    return out / 2.0;
}

std::vector<int> connected_components(const Eigen::MatrixXd& weights) {
    const Index n = weights.rows();
    std::vector<int> label(n, -1);
    int next = 0;
    for (Index s = 0; s < n; ++s) {
        if (label[s] >= 0) continue;
        std::vector<Index> stack{s};
        label[s] = next;
        while (!stack.empty()) {
            const Index u = stack.back();
            stack.pop_back();
            for (Index v = 0; v < n; ++v) {
                if (label[v] < 0 && weights(u, v) > 0.0) {
                    label[v] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }
    return label;
}

InformationCentralityResult information_centrality_detail(const Eigen::MatrixXd& weights,
                                                          const InformationCentralityOptions& opts) {
    validate_weights(weights);
    const Index n = weights.rows();
    if (n < 2) throw InputError("information centrality needs at least 2 nodes");
    InformationCentralityResult res;
    if (opts.components == ComponentPolicy::strict) {
        res.values = solve_dense(weights, opts, res.condition, res.residual);
        res.evaluated.assign(n, true);
        return res;
    }

    const auto label = connected_components(weights);
    const int count = *std::max_element(label.begin(), label.end()) + 1;
    std::vector<int> sizes(count, 0);
    for (int l : label) ++sizes[l];
    const int largest = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

    res.values = Eigen::VectorXd::Zero(n);
    res.evaluated.assign(n, false);
    if (sizes[largest] < 2) return res;

    std::vector<Index> members;
    for (Index i = 0; i < n; ++i)
        if (label[i] == largest) members.push_back(i);
    const auto m = static_cast<Index>(members.size());
    Eigen::MatrixXd sub(m, m);
    for (Index a = 0; a < m; ++a)
        for (Index b = 0; b < m; ++b) sub(a, b) = weights(members[a], members[b]);
    const Eigen::VectorXd v = solve_dense(sub, opts, res.condition, res.residual);
    for (Index a = 0; a < m; ++a) {
        res.values[members[a]] = v[a];
        res.evaluated[members[a]] = true;
    }
    return res;
}

Eigen::VectorXd information_centrality(const CrossSectionNetwork& net, const InformationCentralityOptions& opts) {
    return information_centrality_detail(net.weights, opts).values;
}

CentralityPanel centrality_panel(std::span<const CrossSectionNetwork> networks, double alpha,
                                 ComponentPolicy components) {
    CentralityPanel panel;
    panel.alpha = alpha;
    if (networks.empty()) return panel;
    panel.nodes = networks.front().nodes;
    const auto t = static_cast<Index>(networks.size());
    const auto n = static_cast<Index>(panel.nodes.size());
    panel.values.resize(t, n);
    InformationCentralityOptions opts;
    opts.components = components;
    for (Index k = 0; k < t; ++k) {
        const auto& net = networks[k];
        if (net.nodes != panel.nodes)
            throw InputError("centrality panel: inconsistent node ordering at period " + to_label(net.period));
        panel.periods.push_back(net.period);
        panel.values.row(k) = information_centrality(smooth(net, {alpha}), opts).transpose();
    }
    const double lo = panel.values.minCoeff(), hi = panel.values.maxCoeff();
    if (hi > lo) {
        panel.normalized = (panel.values.array() - lo) / (hi - lo);
    } else {
        panel.normalized = Eigen::MatrixXd::Zero(t, n);
        panel.flat = true;
    }
    return panel;
}

double variance_over_time(const Eigen::MatrixXd& normalized) {
    if (normalized.rows() < 2) throw InputError("variance over time needs at least 2 periods");
    const Eigen::RowVectorXd mu = normalized.colwise().mean();
    return (normalized.rowwise() - mu).array().square().colwise().mean().mean();
}

double variance_across_nodes(const Eigen::MatrixXd& normalized) {
    if (normalized.cols() < 2) throw InputError("variance across nodes needs at least 2 nodes");
    const Eigen::RowVectorXd mu = normalized.colwise().mean();
    return (normalized.rowwise() - mu).array().square().rowwise().mean().mean();
}

std::vector<DistributionPoint> cumulative_distribution(std::span<const double> values) {
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    std::vector<DistributionPoint> out;
    const double n = static_cast<double>(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0 && v[i] == v[i - 1]) continue;
        out.push_back({v[i], static_cast<double>(v.size() - i) / n});
    }
    return out;
}

std::vector<DistributionPoint> strength_distribution(const CrossSectionNetwork& net) {
    const Eigen::VectorXd s = strength(net);
    return cumulative_distribution(std::span<const double>(s.data(), static_cast<std::size_t>(s.size())));
}

DistributionFit fit_distribution(std::span<const DistributionPoint> points, DistributionModel model, double lo,
                                 double hi) {
    std::vector<double> xs, ys;
    for (const auto& pt : points) {
        if (pt.x < lo || pt.x > hi || !(pt.p > 0.0)) continue;
        if (model == DistributionModel::power_law && !(pt.x > 0.0)) continue;
        xs.push_back(model == DistributionModel::power_law ? std::log(pt.x) : pt.x);
        ys.push_back(std::log(pt.p));
    }
    if (xs.size() < 3) throw InputError("distribution fit needs at least 3 distinct values in range");
    const auto m = static_cast<Index>(xs.size());
    Eigen::MatrixXd a(m, 2);
    Eigen::VectorXd y(m);
    for (Index i = 0; i < m; ++i) {
        a(i, 0) = 1.0;
        a(i, 1) = xs[i];
        y[i] = ys[i];
    }
    const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(y);
    DistributionFit fit;
    fit.model = model;
    fit.scale = std::exp(coef[0]);
    fit.rate = -coef[1];
    fit.residual = (a * coef - y).squaredNorm();
    fit.points = xs.size();
    auto [mn, mx] = std::minmax_element(points.begin(), points.end(),
                                        [](const auto& p, const auto& q) { return p.x < q.x; });
    fit.range_lo = std::max(lo, mn->x);
    fit.range_hi = std::min(hi, mx->x);
    return fit;
}

} // namespace textnet
