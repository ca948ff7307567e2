#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "textnet/period.hpp"

namespace textnet {

struct PanelObservation {
    std::string entity;
    Period period;
    /// Binary state C_j: 1 in a pre-distress window, 0 otherwise.
    int label = 0;
    std::vector<double> features;
};

struct Panel {
    std::vector<std::string> feature_names;
    std::vector<PanelObservation> rows;

    std::size_t feature_index(const std::string& name) const;
    /// Rows x selected-features matrix, without an intercept column.
    Eigen::MatrixXd design(std::span<const std::string> features) const;
    Eigen::VectorXd column(const std::string& feature) const;
    std::vector<int> labels() const;
};

struct DistressEvent {
    std::string entity;
    std::chrono::year_month_day date;
    std::string type;
};

enum class PostEventPolicy {
    /// Distress and later periods stay in the panel with label 0.
    label_zero,
    /// Distress and later periods are removed from the panel.
    drop,
};

/// Labels an observation 1 when its period starts within `horizon_months`
/// strictly before the start of the period containing one of the entity's
/// distress events.
Panel label_pre_distress(const Panel& panel, std::span<const DistressEvent> events, int horizon_months,
                         PostEventPolicy post = PostEventPolicy::label_zero);

struct LogitOptions {
    int max_iterations = 100;
    /// Converged when the largest coefficient update falls below this.
    double tolerance = 1e-8;
};

struct LogitFit {
    /// Intercept first, then one coefficient per feature.
    Eigen::VectorXd coefficients;
    Eigen::VectorXd probabilities;
    double log_likelihood = 0.0;
    int iterations = 0;
    bool converged = false;
    /// Fitted probabilities collapsed onto 0/1: the classes are (quasi-)separable
    /// and the coefficients are not meaningful.
    bool separation = false;
};

/// Maximum-likelihood logistic regression by iteratively reweighted least
/// squares. `x` excludes the intercept; one is always added.
LogitFit fit_logit(const Eigen::MatrixXd& x, std::span<const int> labels, const LogitOptions& opts = {});
double logit_log_likelihood(const Eigen::MatrixXd& x, std::span<const int> labels, const Eigen::VectorXd& coefficients);

struct OlsFit {
    /// Intercept first.
    Eigen::VectorXd coefficients;
    /// HC1 heteroskedasticity-robust standard errors.
    Eigen::VectorXd robust_se;
    double r_squared = 0.0;
};

/// Ordinary least squares with an intercept, solved by Householder QR.
/// `names` label the columns of `x` in rank-deficiency errors.
OlsFit fit_ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, std::span<const std::string> names = {});

struct Contingency {
    long tp = 0;
    long fp = 0;
    long fn = 0;
    long tn = 0;

    long total() const { return tp + fp + fn + tn; }
};

/// Signals P_j = 1 iff p_j > lambda.
Contingency contingency(std::span<const double> p, std::span<const int> labels, double lambda);

struct Preferences {
    double mu = 0.9;

    void validate() const;
};

struct ErrorRates {
    double t1 = 0.0;
    double t2 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
};

/// T1, T2 and the class frequencies; throws when either class is empty.
ErrorRates error_rates(const Contingency& c);

/// L(mu) = mu T1 P1 + (1 - mu) T2 P2
double loss(const Contingency& c, const Preferences& prefs);

struct Usefulness {
    double absolute = 0.0;
    /// Undefined when min(mu P1, (1 - mu) P2) is zero.
    std::optional<double> relative;
};

Usefulness usefulness(const Contingency& c, const Preferences& prefs);

/// Threshold minimizing L(mu) over midpoints between consecutive distinct
/// probabilities plus 0 and 1. Ties go to the larger threshold.
double optimize_threshold(std::span<const double> p, std::span<const int> labels, const Preferences& prefs);

/// Mann-Whitney AUC with ties counted as one half.
double auc(std::span<const double> p, std::span<const int> labels);

struct EvalOutcome {
    double lambda = 0.0;
    Contingency counts;
    ErrorRates rates;
    double loss = 0.0;
    Usefulness use;
    double auc = 0.0;
};

EvalOutcome evaluate(std::span<const double> p, std::span<const int> labels, const Preferences& prefs);

} // namespace textnet
