#include "textnet/earlywarn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "textnet/error.hpp"

namespace textnet {

namespace {

void check_labels(std::span<const int> labels, std::size_t n) {
    if (labels.size() != n) throw InputError("label count does not match the number of observations");
    for (int y : labels)
        if (y != 0 && y != 1) throw InputError("labels must be 0 or 1");
}

Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& x) {
    Eigen::MatrixXd out(x.rows(), x.cols() + 1);
    out.col(0).setOnes();
    out.rightCols(x.cols()) = x;
    return out;
}

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

} // namespace

std::size_t Panel::feature_index(const std::string& name) const {
    auto it = std::find(feature_names.begin(), feature_names.end(), name);
    if (it == feature_names.end()) throw InputError("panel has no feature column '" + name + "'");
    return static_cast<std::size_t>(it - feature_names.begin());
}

Eigen::MatrixXd Panel::design(std::span<const std::string> features) const {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(features.size()));
    for (std::size_t k = 0; k < features.size(); ++k) {
        const std::size_t col = feature_index(features[k]);
        for (std::size_t r = 0; r < rows.size(); ++r) x(r, k) = rows[r].features.at(col);
    }
    return x;
}

Eigen::VectorXd Panel::column(const std::string& feature) const {
    const std::string f[] = {feature};
    return design(f).col(0);
}

std::vector<int> Panel::labels() const {
    std::vector<int> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.label);
    return out;
}

Panel label_pre_distress(const Panel& panel, std::span<const DistressEvent> events, int horizon_months,
                         PostEventPolicy post) {
    if (horizon_months <= 0) throw InputError("horizon must be positive");
    std::set<std::string> entities;
    for (const auto& r : panel.rows) entities.insert(r.entity);
    std::map<std::string, std::vector<std::chrono::year_month_day>> by_entity;
    for (const auto& e : events) {
        if (!entities.count(e.entity)) throw InputError("distress event for unknown entity '" + e.entity + "'");
        by_entity[e.entity].push_back(e.date);
    }

    Panel out{panel.feature_names, {}};
    for (const auto& row : panel.rows) {
        if (row.period.kind == PeriodKind::full_span) throw InputError("pre-distress labels need dated periods");
        const int obs = start_month_index(row.period);
        bool pre = false, after = false;
        if (auto it = by_entity.find(row.entity); it != by_entity.end()) {
            for (const auto& date : it->second) {
                const int diff = start_month_index(assign_period(date, row.period.kind)) - obs;
                if (diff > 0 && diff <= horizon_months) pre = true;
                if (diff <= 0) after = true;
            }
        }
        if (!pre && after && post == PostEventPolicy::drop) continue;
        PanelObservation labeled = row;
        labeled.label = pre ? 1 : 0;
        out.rows.push_back(std::move(labeled));
    }
    return out;
}

double logit_log_likelihood(const Eigen::MatrixXd& x, std::span<const int> labels, const Eigen::VectorXd& coefficients) {
    const Eigen::VectorXd eta = with_intercept(x) * coefficients;
    double ll = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) ll += labels[i] * eta[i] - softplus(eta[i]);
    return ll;
}

LogitFit fit_logit(const Eigen::MatrixXd& x, std::span<const int> labels, const LogitOptions& opts) {
    const Eigen::Index n = x.rows();
    check_labels(labels, static_cast<std::size_t>(n));
    if (!x.allFinite()) throw InputError("logit: non-finite feature values");
    const long positives = std::count(labels.begin(), labels.end(), 1);
    if (positives == 0 || positives == n) throw InputError("logit: both classes must be present");

    // Identically zero columns carry no information; pin their coefficient at 0.
    std::vector<Eigen::Index> active;
    for (Eigen::Index j = 0; j < x.cols(); ++j)
        if (x.col(j).cwiseAbs().maxCoeff() > 0.0) active.push_back(j);
    Eigen::MatrixXd xa(n, static_cast<Eigen::Index>(active.size()));
    for (std::size_t k = 0; k < active.size(); ++k) xa.col(static_cast<Eigen::Index>(k)) = x.col(active[k]);
    const Eigen::MatrixXd design = with_intercept(xa);
    const Eigen::Index p = design.cols();

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < p) throw InputError("logit: singular design matrix (collinear features)");

    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y[i] = labels[i];

    auto loglik = [&](const Eigen::VectorXd& b) {
        const Eigen::VectorXd eta = design * b;
        double ll = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) ll += y[i] * eta[i] - softplus(eta[i]);
        return ll;
    };

    LogitFit fit;
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    double ll = loglik(beta);
    for (fit.iterations = 1; fit.iterations <= opts.max_iterations; ++fit.iterations) {
        const Eigen::VectorXd eta = design * beta;
        Eigen::VectorXd mu(n), w(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            mu[i] = sigmoid(eta[i]);
            w[i] = std::max(mu[i] * (1.0 - mu[i]), 1e-300);
        }
        const Eigen::MatrixXd hessian = design.transpose() * w.asDiagonal() * design;
        const Eigen::VectorXd gradient = design.transpose() * (y - mu);
        Eigen::LDLT<Eigen::MatrixXd> ldlt(hessian);
        if (ldlt.info() != Eigen::Success) break;
        Eigen::VectorXd step = ldlt.solve(gradient);
        if (!step.allFinite()) break;
        // Step halving keeps the likelihood from decreasing.
        double next = loglik(beta + step);
        for (int h = 0; h < 30 && next < ll - 1e-12 * std::abs(ll); ++h) {
            step *= 0.5;
            next = loglik(beta + step);
        }
        beta += step;
        ll = next;
        if (step.cwiseAbs().maxCoeff() < opts.tolerance) {
            fit.converged = true;
            break;
        }
    }
    fit.iterations = std::min(fit.iterations, opts.max_iterations);

    fit.coefficients = Eigen::VectorXd::Zero(x.cols() + 1);
    fit.coefficients[0] = beta[0];
    for (std::size_t k = 0; k < active.size(); ++k) fit.coefficients[active[k] + 1] = beta[static_cast<Eigen::Index>(k) + 1];
    const Eigen::VectorXd eta = design * beta;
    fit.probabilities.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        fit.probabilities[i] = sigmoid(eta[i]);
        if (std::abs(eta[i]) > 30.0) fit.separation = true;
    }
    fit.log_likelihood = ll;
    return fit;
}

OlsFit fit_ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, std::span<const std::string> names) {
    const Eigen::Index n = x.rows();
    if (y.size() != n) throw InputError("ols: target length does not match the design");
    const Eigen::MatrixXd design = with_intercept(x);
    const Eigen::Index p = design.cols();
    if (n <= p) throw InputError("ols: need more observations than coefficients");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < p) {
        // Columns carrying weight in a null-space vector take part in the dependency.
        Eigen::FullPivLU<Eigen::MatrixXd> lu(design);
        lu.setThreshold(qr.threshold());
        const Eigen::MatrixXd kernel = lu.kernel();
        std::string cols;
        for (Eigen::Index c = 0; c < p; ++c) {
            if (kernel.row(c).cwiseAbs().maxCoeff() <= 1e-9 * kernel.cwiseAbs().maxCoeff()) continue;
            std::string name = c == 0 ? "(intercept)"
                               : static_cast<std::size_t>(c - 1) < names.size() ? names[c - 1]
                                                                              : "x" + std::to_string(c);
            cols += (cols.empty() ? "" : ", ") + name;
        }
        throw InputError("ols: rank-deficient design, collinear columns: " + cols);
    }

    OlsFit fit;
    fit.coefficients = qr.solve(y);
    const Eigen::VectorXd resid = y - design * fit.coefficients;
    const double ssr = resid.squaredNorm();
    const double sst = (y.array() - y.mean()).square().sum();
    fit.r_squared = sst > 0.0 ? 1.0 - ssr / sst : 1.0;

    const Eigen::MatrixXd bread = (design.transpose() * design).ldlt().solve(Eigen::MatrixXd::Identity(p, p));
    const Eigen::MatrixXd meat = design.transpose() * resid.array().square().matrix().asDiagonal() * design;
    const Eigen::MatrixXd cov = bread * meat * bread * (static_cast<double>(n) / static_cast<double>(n - p));
    fit.robust_se = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
    return fit;
}

Contingency contingency(std::span<const double> p, std::span<const int> labels, double lambda) {
    check_labels(labels, p.size());
    Contingency c;
    for (std::size_t j = 0; j < p.size(); ++j) {
        const bool signal = p[j] > lambda;
        if (labels[j] == 1)
            (signal ? c.tp : c.fn)++;
        else
            (signal ? c.fp : c.tn)++;
    }
    return c;
}

void Preferences::validate() const {
    if (!(mu >= 0.0 && mu <= 1.0)) throw InputError("preference mu must lie in [0, 1]");
}

ErrorRates error_rates(const Contingency& c) {
    const long pos = c.tp + c.fn, neg = c.fp + c.tn;
    if (pos == 0 || neg == 0) throw InputError("evaluation needs at least one observation of each class");
    const double total = static_cast<double>(pos + neg);
    return {static_cast<double>(c.fn) / static_cast<double>(pos), static_cast<double>(c.fp) / static_cast<double>(neg),
            static_cast<double>(pos) / total, static_cast<double>(neg) / total};
}

double loss(const Contingency& c, const Preferences& prefs) {
    prefs.validate();
    const ErrorRates r = error_rates(c);
    return prefs.mu * r.t1 * r.p1 + (1.0 - prefs.mu) * r.t2 * r.p2;
}

Usefulness usefulness(const Contingency& c, const Preferences& prefs) {
    const ErrorRates r = error_rates(c);
    const double benchmark = std::min(prefs.mu * r.p1, (1.0 - prefs.mu) * r.p2);
    Usefulness u;
    u.absolute = benchmark - loss(c, prefs);
    if (benchmark > 0.0) u.relative = u.absolute / benchmark;
    return u;
}

double optimize_threshold(std::span<const double> p, std::span<const int> labels, const Preferences& prefs) {
    check_labels(labels, p.size());
    std::vector<double> distinct(p.begin(), p.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    // Descending candidate order so that ties keep the larger threshold.
    std::vector<double> candidates{1.0};
    for (std::size_t k = distinct.size(); k-- > 1;) candidates.push_back(0.5 * (distinct[k] + distinct[k - 1]));
    candidates.push_back(0.0);

    // Sweep: after sorting by p descending, the signals for a candidate form a prefix.
    std::vector<std::size_t> order(p.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });

    Contingency c;
    for (int y : labels) (y == 1 ? c.fn : c.tn)++;
    std::size_t next = 0;
    double best_lambda = 1.0, best = std::numeric_limits<double>::infinity();
    for (double lambda : candidates) {
        for (; next < order.size() && p[order[next]] > lambda; ++next) {
            if (labels[order[next]] == 1) {
                --c.fn;
                ++c.tp;
            } else {
                --c.tn;
                ++c.fp;
            }
        }
        const double l = loss(c, prefs);
        if (l < best - 1e-15) {
            best = l;
            best_lambda = lambda;
        }
    }
    return best_lambda;
}

double auc(std::span<const double> p, std::span<const int> labels) {
    check_labels(labels, p.size());
    std::vector<std::size_t> order(p.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
    double rank_sum = 0.0;
    long pos = 0;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() && p[order[j]] == p[order[i]]) ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k) {
            if (labels[order[k]] == 1) {
                rank_sum += avg_rank;
                ++pos;
            }
        }
        i = j;
    }
    const long neg = static_cast<long>(p.size()) - pos;
    if (pos == 0 || neg == 0) throw InputError("AUC needs at least one observation of each class");
    const double u = rank_sum - 0.5 * static_cast<double>(pos) * static_cast<double>(pos + 1);
    return u / (static_cast<double>(pos) * static_cast<double>(neg));
}

EvalOutcome evaluate(std::span<const double> p, std::span<const int> labels, const Preferences& prefs) {
    prefs.validate();
    EvalOutcome out;
    out.lambda = optimize_threshold(p, labels, prefs);
    out.counts = contingency(p, labels, out.lambda);
    out.rates = error_rates(out.counts);
    out.loss = loss(out.counts, prefs);
    out.use = usefulness(out.counts, prefs);
    out.auc = auc(p, labels);
    return out;
}

} // namespace textnet
