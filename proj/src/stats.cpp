#include "dnf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dnf {

namespace {

// regularized incomplete beta via Lentz's continued fraction
double betacf(double a, double b, double x) {
    constexpr int max_iter = 300;
    constexpr double eps = 3e-16;
    constexpr double fpmin = 1e-300;

    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

double ibeta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log(1.0 - x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

}  // namespace

double student_t_two_sided_p(double t, double df) {
    if (!(df > 0)) throw std::invalid_argument("student_t_two_sided_p: df must be > 0");
    if (std::isinf(t)) return 0.0;
    return ibeta(df / 2.0, 0.5, df / (df + t * t));
}

std::vector<double> average_ranks(const std::vector<double>& values) {
    const size_t n = values.size();
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&values](size_t a, size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
        const double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (size_t k = i; k <= j; ++k) ranks[idx[k]] = mean_rank;
        i = j + 1;
    }
    return ranks;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("pearson: need equal lengths >= 2");
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (!(sxx > 0) || !(syy > 0))
        throw std::invalid_argument("pearson: constant input");
    return sxy / std::sqrt(sxx * syy);
}

SpearmanResult spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 3)
        throw std::invalid_argument("spearman: need equal lengths >= 3");

    SpearmanResult r;
    r.n = xs.size();
    r.rho = pearson(average_ranks(xs), average_ranks(ys));

    const double df = static_cast<double>(r.n) - 2.0;
    if (std::fabs(r.rho) >= 1.0) {
        r.p = 0.0;
    } else {
        const double t = r.rho * std::sqrt(df / (1.0 - r.rho * r.rho));
        r.p = student_t_two_sided_p(t, df);
    }
    return r;
}

std::vector<double> zscore(const std::vector<double>& values) {
    if (values.size() < 2) throw std::invalid_argument("zscore: need at least 2 values");
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    if (!(sd > 0)) throw std::invalid_argument("zscore: zero variance");
    std::vector<double> out(values.size());
    for (size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - mean) / sd;
    return out;
}

RegressionFit ols_interaction(const std::vector<double>& rt, const std::vector<double>& acc_z,
                              const std::vector<double>& context) {
    const size_t n = rt.size();
    if (acc_z.size() != n || context.size() != n)
        throw std::invalid_argument("ols_interaction: length mismatch");
    if (n <= 4) throw std::invalid_argument("ols_interaction: need n > 4");

    constexpr int k = 4;
    auto row = [&](size_t i) {
        return std::array<double, k>{1.0, context[i], acc_z[i], context[i] * acc_z[i]};
    };

    double xtx[k][k] = {};
    double xty[k] = {};
    for (size_t i = 0; i < n; ++i) {
        const auto x = row(i);
        for (int a = 0; a < k; ++a) {
            xty[a] += x[a] * rt[i];
            for (int b = 0; b < k; ++b) xtx[a][b] += x[a] * x[b];
        }
    }

    // invert XtX with Gauss-Jordan, partial pivoting
    double aug[k][2 * k] = {};
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) aug[a][b] = xtx[a][b];
        aug[a][k + a] = 1.0;
    }
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r2 = col + 1; r2 < k; ++r2)
            if (std::fabs(aug[r2][col]) > std::fabs(aug[piv][col])) piv = r2;
        if (std::fabs(aug[piv][col]) < 1e-12)
            throw std::invalid_argument("ols_interaction: singular design matrix");
        if (piv != col)
            for (int c = 0; c < 2 * k; ++c) std::swap(aug[piv][c], aug[col][c]);
        const double d = aug[col][col];
        for (int c = 0; c < 2 * k; ++c) aug[col][c] /= d;
        for (int r2 = 0; r2 < k; ++r2) {
            if (r2 == col) continue;
            const double f = aug[r2][col];
            for (int c = 0; c < 2 * k; ++c) aug[r2][c] -= f * aug[col][c];
        }
    }

    RegressionFit fit;
    fit.n = n;
    fit.df = static_cast<int>(n) - k;
    for (int a = 0; a < k; ++a) {
        double beta = 0.0;
        for (int b = 0; b < k; ++b) beta += aug[a][k + b] * xty[b];
        fit.beta[static_cast<size_t>(a)] = beta;
    }

    double rss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const auto x = row(i);
        double pred = 0.0;
        for (int a = 0; a < k; ++a) pred += fit.beta[static_cast<size_t>(a)] * x[a];
        const double resid = rt[i] - pred;
        rss += resid * resid;
    }
    const double sigma2 = rss / fit.df;
    for (int a = 0; a < k; ++a) {
        fit.se[static_cast<size_t>(a)] = std::sqrt(sigma2 * aug[a][k + a]);
        fit.t[static_cast<size_t>(a)] =
            fit.beta[static_cast<size_t>(a)] / fit.se[static_cast<size_t>(a)];
        fit.p[static_cast<size_t>(a)] =
            student_t_two_sided_p(fit.t[static_cast<size_t>(a)], fit.df);
    }
    return fit;
}

RegressionFit signflip_magnitude_check(const std::vector<double>& rt,
                                       const std::vector<double>& acc_z,
                                       const std::vector<double>& context) {
    std::vector<double> flipped(rt.size());
    for (size_t i = 0; i < rt.size(); ++i)
        flipped[i] = (context[i] < 0) ? -rt[i] : rt[i];
    return ols_interaction(flipped, acc_z, context);
}

}  // namespace dnf
