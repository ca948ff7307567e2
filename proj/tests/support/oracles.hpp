#pragma once

// Reference implementations used only by tests. They favour the most direct
// formulation over speed and share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline Matrix from_eigen(const Eigen::MatrixXd& m) {
    Matrix out(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
    return out;
}

// Gauss-Jordan elimination with partial pivoting on [A | I].
inline Matrix gauss_inverse(Matrix a) {
    const std::size_t n = a.size();
    Matrix inv(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0) throw std::runtime_error("singular");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const double d = a[col][col];
        for (std::size_t k = 0; k < n; ++k) {
            a[col][k] /= d;
            inv[col][k] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (std::size_t k = 0; k < n; ++k) {
                a[r][k] -= f * a[col][k];
                inv[r][k] -= f * inv[col][k];
            }
        }
    }
    return inv;
}

// Information centrality as the harmonic mean of pairwise path information
// I_ij = 1 / (C_ii + C_jj - 2 C_ij), taking I_ii as infinite.
inline std::vector<double> information_centrality(const Matrix& w) {
    const std::size_t n = w.size();
    Matrix b(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += w[i][j];
        for (std::size_t j = 0; j < n; ++j) b[i][j] = i == j ? 1.0 + s : 1.0 - w[i][j];
    }
    const Matrix c = gauss_inverse(b);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double inv_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) inv_sum += c[i][i] + c[j][j] - 2.0 * c[i][j];
        out[i] = static_cast<double>(n) / inv_sum;
    }
    return out;
}

inline Matrix floyd_warshall(const Matrix& w) {
    const double inf = std::numeric_limits<double>::infinity();
    const std::size_t n = w.size();
    Matrix d(n, std::vector<double>(n, inf));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) d[i][j] = 0.0;
            else if (w[i][j] > 0.0) d[i][j] = 1.0 / w[i][j];
        }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return d;
}

// Betweenness by enumerating every simple path between each unordered pair.
inline std::vector<double> betweenness_by_enumeration(const Matrix& w, double rel_tol = 1e-12) {
    const std::size_t n = w.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = s + 1; t < n; ++t) {
            std::vector<std::pair<double, std::vector<std::size_t>>> paths;
            std::vector<std::size_t> stack{s};
            std::vector<bool> used(n, false);
            used[s] = true;
            std::function<void(std::size_t, double)> dfs = [&](std::size_t v, double len) {
                if (v == t) {
                    paths.push_back({len, stack});
                    return;
                }
                for (std::size_t u = 0; u < n; ++u) {
                    if (used[u] || w[v][u] <= 0.0) continue;
                    used[u] = true;
                    stack.push_back(u);
                    dfs(u, len + 1.0 / w[v][u]);
                    stack.pop_back();
                    used[u] = false;
                }
            };
            dfs(s, 0.0);
            if (paths.empty()) continue;
            double best = std::numeric_limits<double>::infinity();
            for (const auto& p : paths) best = std::min(best, p.first);
            std::vector<const std::vector<std::size_t>*> shortest;
            for (const auto& p : paths)
                if (p.first <= best * (1.0 + rel_tol)) shortest.push_back(&p.second);
            for (const auto* p : shortest)
                for (std::size_t k = 1; k + 1 < p->size(); ++k)
                    out[(*p)[k]] += 1.0 / static_cast<double>(shortest.size());
        }
    }
    return out;
}

// rows = periods, cols = nodes
inline double variance_over_time(const Matrix& x) {
    const std::size_t t = x.size(), n = x[0].size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double mean = 0.0;
        for (std::size_t k = 0; k < t; ++k) mean += x[k][i];
        mean /= static_cast<double>(t);
        double v = 0.0;
        for (std::size_t k = 0; k < t; ++k) v += (x[k][i] - mean) * (x[k][i] - mean);
        total += v / static_cast<double>(t);
    }
    return total / static_cast<double>(n);
}

inline double variance_across_nodes(const Matrix& x) {
    const std::size_t t = x.size(), n = x[0].size();
    std::vector<double> mu(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < t; ++k) mu[i] += x[k][i];
        mu[i] /= static_cast<double>(t);
    }
    double total = 0.0;
    for (std::size_t k = 0; k < t; ++k) {
        double inner = 0.0;
        for (std::size_t i = 0; i < n; ++i) inner += (x[k][i] - mu[i]) * (x[k][i] - mu[i]);
        total += inner / static_cast<double>(n);
    }
    return total / static_cast<double>(t);
}

// Least squares with an intercept through the normal equations,
// beta = (X'X)^-1 X'y, inverted by Gauss-Jordan.
inline std::vector<double> ols_normal_equations(const Matrix& x, const std::vector<double>& y) {
    const std::size_t n = x.size(), k = x[0].size() + 1;
    auto at = [&](std::size_t r, std::size_t c) { return c == 0 ? 1.0 : x[r][c - 1]; };
    Matrix xtx(k, std::vector<double>(k, 0.0));
    std::vector<double> xty(k, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t a = 0; a < k; ++a) {
            xty[a] += at(r, a) * y[r];
            for (std::size_t b = 0; b < k; ++b) xtx[a][b] += at(r, a) * at(r, b);
        }
    const Matrix inv = gauss_inverse(xtx);
    std::vector<double> beta(k, 0.0);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) beta[a] += inv[a][b] * xty[b];
    return beta;
}

inline double loss(const std::vector<double>& p, const std::vector<int>& c, double lambda, double mu) {
    double tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        const bool signal = p[j] > lambda;
        if (c[j] == 1) (signal ? tp : fn) += 1;
        else (signal ? fp : tn) += 1;
    }
    const double n = tp + fp + fn + tn;
    const double t1 = fn / (tp + fn), t2 = fp / (fp + tn);
    const double p1 = (tp + fn) / n, p2 = (fp + tn) / n;
    return mu * t1 * p1 + (1.0 - mu) * t2 * p2;
}

// Smallest loss over lambda = k / steps, k = 0..steps.
inline double grid_min_loss(const std::vector<double>& p, const std::vector<int>& c, double mu, int steps = 10000) {
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= steps; ++k)
        best = std::min(best, loss(p, c, static_cast<double>(k) / steps, mu));
    return best;
}

inline double pairwise_auc(const std::vector<double>& p, const std::vector<int>& c) {
    double hits = 0.0, pairs = 0.0;
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (c[a] != 1) continue;
        for (std::size_t b = 0; b < p.size(); ++b) {
            if (c[b] != 0) continue;
            pairs += 1.0;
            if (p[a] > p[b]) hits += 1.0;
            else if (p[a] == p[b]) hits += 0.5;
        }
    }
    return hits / pairs;
}

// Symmetric nonnegative weights with a zero diagonal; each link present with
// probability `density` and weight uniform in [lo, hi].
inline Eigen::MatrixXd random_weights(std::mt19937_64& rng, int n, double density, double lo, double hi) {
    std::uniform_real_distribution<double> u(0.0, 1.0), w(lo, hi);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (u(rng) < density) m(i, j) = m(j, i) = w(rng);
    return m;
}

inline bool connected(const Eigen::MatrixXd& w) {
    const auto n = w.rows();
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<Eigen::Index> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        for (Eigen::Index u = 0; u < n; ++u)
            if (!seen[u] && w(v, u) > 0.0) {
                seen[u] = true;
                stack.push_back(u);
            }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

// Removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::uint64_t counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("textnet-" + tag + "-" + std::to_string(std::random_device{}()) + "-" + std::to_string(++counter));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

} // namespace oracle
