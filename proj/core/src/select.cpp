#include "npselect/select.hpp"

#include <cmath>
#include <stdexcept>

#include "npselect/lattice.hpp"

namespace npselect {

DensityFn uniform_density() {
    return [](std::span<const double>) { return 1.0; };
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 32) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double basis_eval(const MultiIndex& k, Trig trig, std::span<const double> x) {
    if (static_cast<int>(x.size()) != k.dimension)
        throw std::invalid_argument("basis_eval: point dimension mismatch");
    if (k.is_zero()) {
        if (trig != Trig::cos) throw std::invalid_argument("basis_eval: zero index has no sin branch");
        return 1.0;
    }
    if (!k.is_canonical())
        throw std::invalid_argument("basis_eval: k must be canonical (first nonzero value positive)");
    double dot = 0.0;
    for (std::size_t i = 0; i < k.support.size(); ++i)
        dot += static_cast<double>(k.values[i]) * x[static_cast<std::size_t>(k.support[i]) - 1];
    const double ang = 2.0 * M_PI * dot;
    return M_SQRT2 * (trig == Trig::cos ? std::cos(ang) : std::sin(ang));
}

double empirical_coeff(const Matrix& X, std::span<const double> Y,
                       const DensityFn& density_at, const MultiIndex& k, Trig trig) {
    const std::size_t n = X.rows();
    if (Y.size() != n) throw std::invalid_argument("empirical_coeff: X/Y size mismatch");
    if (n == 0) throw std::invalid_argument("empirical_coeff: empty sample");
    std::vector<double> terms(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double g = density_at(X.row(i));
        if (!(g > 0.0)) throw std::runtime_error("empirical_coeff: nonpositive density value");
        terms[i] = basis_eval(k, trig, X.row(i)) / g * Y[i];
    }
    return pairwise_sum(terms) / static_cast<double>(n);
}

TuningParams tuning(const ModelParams& params, double n) {
    params.validate();
    if (!(n >= 1.0)) throw std::invalid_argument("tuning: n must be >= 1");
    const double ds = static_cast<double>(params.d_star);
    const double m_sq = 2.0 * params.L * ds / params.kappa;
    TuningParams t;
    t.m = std::sqrt(m_sq);
    t.radius_sq = static_cast<long>(std::floor(m_sq));
    if (!(6.0 * t.m * params.d > 1.0))
        throw std::invalid_argument("tuning: requires 6*m*d > 1");
    t.lambda = 4.0 * (params.sigma + params.L2)
               * std::sqrt(ds * std::log(6.0 * t.m * params.d) / (n * params.g_min * params.g_min));
    return t;
}

SelectionResult select_by_threshold(const CoeffFn& coeff, int d, const ModelParams& params,
                                    const TuningParams& tuning, bool cap_at_d_star) {
    params.validate();
    if (d < 1) throw std::invalid_argument("select: d must be >= 1");
    if (!(tuning.lambda > 0.0)) throw std::invalid_argument("select: lambda must be > 0");

    SelectionResult res;
    const int max_level = std::min(params.d_star, d);
    for (int level = 1; level <= max_level; ++level) {
        for (const MultiIndex& k : ball_level(d, tuning.radius_sq, level)) {
            for (Trig trig : {Trig::cos, Trig::sin}) {
                const double v = coeff(k, trig);
                if (std::abs(v) > tuning.lambda) {
                    res.records.push_back({k, trig, v});
                    for (int j : k.support) res.selected.insert(j);
                }
            }
        }
        res.levels_visited = level;
        // stepwise cap: decided only at level boundaries so the result does
        // not depend on intra-level evaluation order
        if (cap_at_d_star && static_cast<int>(res.selected.size()) >= params.d_star) {
            res.stopped_early = true;
            break;
        }
    }
    return res;
}

SelectionResult select_variables(const Matrix& X, std::span<const double> Y,
                                 const DensityFn& density_at, const ModelParams& params,
                                 const TuningParams& tuning, bool cap_at_d_star) {
    const std::size_t n = X.rows();
    if (Y.size() != n) throw std::invalid_argument("select: X/Y size mismatch");
    if (n == 0) throw std::invalid_argument("select: empty sample");
    const int d = params.ambient_dim();
    if (X.cols() != static_cast<std::size_t>(d))
        throw std::invalid_argument("select: design width does not match params.d");

    // inverse density evaluated once per row; validates positivity up front
    std::vector<double> inv_g(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double g = density_at(X.row(i));
        if (!(g > 0.0)) throw std::runtime_error("select: nonpositive density value");
        inv_g[i] = 1.0 / g;
    }

    std::vector<double> terms(n);
    CoeffFn coeff = [&](const MultiIndex& k, Trig trig) {
        for (std::size_t i = 0; i < n; ++i)
            terms[i] = basis_eval(k, trig, X.row(i)) * inv_g[i] * Y[i];
        return pairwise_sum(terms) / static_cast<double>(n);
    };
    return select_by_threshold(coeff, d, params, tuning, cap_at_d_star);
}

}  // namespace npselect
