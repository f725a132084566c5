#include "npselect/theta.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "npselect/lattice.hpp"

namespace npselect {

namespace {

constexpr double kSeriesTol = 1e-16;
constexpr long kMaxSeriesTerms = 100000000L;

// Weighted moments of k^2 under w_k = e^{-y k^2} over k in Z:
// den = sum w_k, m2 = E[k^2], m4 = E[k^4]. One pass serves phi and phi'.
struct ThetaMoments {
    double den;
    double m2;
    double m4;
};

ThetaMoments theta_moments(double y) {
    if (!(y > 0.0)) throw std::invalid_argument("phi: y must be > 0");
    double den = 1.0, s2 = 0.0, s4 = 0.0;
    const double step = std::exp(-2.0 * y);  // ratio of e^{-y(2k+1)} terms
    double r = std::exp(-y);                 // e^{-y(2k-1)} at k=1
    double w = 1.0;                          // e^{-y (k-1)^2}
    for (long k = 1; k <= kMaxSeriesTerms; ++k) {
        w *= r;   // now e^{-y k^2}
        r *= step;
        const double k2 = static_cast<double>(k) * static_cast<double>(k);
        const double t4 = 2.0 * k2 * k2 * w;
        den += 2.0 * w;
        s2 += 2.0 * k2 * w;
        s4 += t4;
        if (k2 * y > 1.0 && t4 < kSeriesTol * s4) {
            return ThetaMoments{den, s2 / den, s4 / den};
        }
        if (w == 0.0) return ThetaMoments{den, s2 / den, s4 / den};
    }
    throw std::runtime_error("phi: series did not converge");
}

}  // namespace

double theta_h(double z, double tol) {
    if (!(z >= 0.0) || z >= 1.0) throw std::invalid_argument("theta_h: z must lie in [0,1)");
    if (!(tol > 0.0)) throw std::invalid_argument("theta_h: tol must be > 0");
    if (z == 0.0) return 1.0;
    double sum = 1.0;
    double p = 1.0;      // z^{(j-1)^2}
    double q = z;        // z^{2j-1} at j=1
    const double z2 = z * z;
    for (long j = 1; j <= kMaxSeriesTerms; ++j) {
        p *= q;  // z^{j^2}
        q *= z2;
        const double t = 2.0 * p;
        sum += t;
        if (t < tol * sum) return sum;
    }
    throw std::runtime_error("theta_h: series did not converge");
}

double phi(double y) {
    return theta_moments(y).m2;
}

double phi_prime(double y) {
    const ThetaMoments m = theta_moments(y);
    return -(m.m4 - m.m2 * m.m2);
}

SaddlePoint solve_saddle(double gamma, double tol) {
    if (!(gamma > 0.0)) throw std::invalid_argument("solve_saddle: gamma must be > 0");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_saddle: tol must be > 0");

    // phi is strictly decreasing: grow the bracket [y_lo, y_hi] until
    // phi(y_lo) > gamma > phi(y_hi).
    double y_lo = 1e-8, y_hi = 1.0;
    int budget = 200;
    while (phi(y_hi) >= gamma) {
        y_hi *= 2.0;
        if (--budget == 0) throw std::runtime_error("solve_saddle: bracket growth failed (upper)");
    }
    while (phi(y_lo) <= gamma) {
        y_lo *= 0.5;
        if (--budget == 0) throw std::runtime_error("solve_saddle: bracket growth failed (lower)");
    }

    for (int it = 0; it < 200 && (y_hi - y_lo) > 1e-16 * y_hi; ++it) {
        const double mid = 0.5 * (y_lo + y_hi);
        if (phi(mid) > gamma) y_lo = mid; else y_hi = mid;
    }

    double y = 0.5 * (y_lo + y_hi);
    double best_y = y;
    double best_res = std::abs(phi(y) - gamma);
    for (int it = 0; it < 50 && best_res > tol; ++it) {
        const double dp = phi_prime(y);
        if (!(dp < 0.0)) break;
        double y_next = y - (phi(y) - gamma) / dp;
        if (!(y_next > 0.0) || !std::isfinite(y_next)) break;
        y = y_next;
        const double res = std::abs(phi(y) - gamma);
        if (res < best_res) {
            best_res = res;
            best_y = y;
        }
    }
    if (!(best_res <= tol))
        throw std::runtime_error("solve_saddle: residual tolerance not reached");

    SaddlePoint sp;
    sp.gamma = gamma;
    sp.y_gamma = best_y;
    sp.z_gamma = std::exp(-best_y);
    sp.h_val = theta_h(sp.z_gamma);
    sp.l_val = std::log(sp.h_val) + gamma * best_y;
    sp.l_pp = -phi_prime(best_y) / (sp.z_gamma * sp.z_gamma);
    sp.tol = best_res;
    return sp;
}

AsymptoticCount asymptotic_counts(int d_star, double gamma) {
    if (d_star < 1) throw std::invalid_argument("asymptotic_counts: d_star must be >= 1");
    const SaddlePoint sp = solve_saddle(gamma);
    const double ds = static_cast<double>(d_star);
    AsymptoticCount out;
    out.d_star = d_star;
    out.gamma = gamma;
    out.log_n1_asym = ds * sp.l_val - std::log(sp.z_gamma) - std::log1p(-sp.z_gamma)
                      - 0.5 * std::log(2.0 * M_PI * sp.l_pp * ds);
    out.log_n2_asym = out.log_n1_asym - std::log(sp.h_val);
    out.log_n_diff_asym = ds * sp.l_val - 0.5 * std::log(ds)
                          - (std::log(sp.h_val) + std::log(sp.z_gamma) + std::log1p(-sp.z_gamma)
                             + 0.5 * std::log(2.0 * M_PI * sp.l_pp) - std::log(sp.h_val - 1.0));
    return out;
}

std::vector<CurvePoint> figure_curves(const std::vector<double>& gamma_grid) {
    if (gamma_grid.empty()) throw std::invalid_argument("figure_curves: empty grid");
    double prev = 0.0;
    for (double g : gamma_grid) {
        if (!(g > prev)) throw std::invalid_argument("figure_curves: grid must be positive and increasing");
        prev = g;
    }
    std::vector<CurvePoint> out;
    out.reserve(gamma_grid.size());
    for (double g : gamma_grid) {
        const SaddlePoint sp = solve_saddle(g);
        out.push_back(CurvePoint{g, sp.z_gamma, sp.l_val});
    }
    return out;
}

double gamma_star(double L, int d_star) {
    if (!(L > 0.0)) throw std::invalid_argument("gamma_star: L must be > 0");
    if (d_star < 1) throw std::invalid_argument("gamma_star: d_star must be >= 1");
    const double ds = static_cast<double>(d_star);
    // candidates j/d*, scanned downward; the inequality is not monotone in
    // gamma, so every candidate gets a fresh saddle solve
    for (long j = static_cast<long>(std::floor(L * ds)); j >= 1; --j) {
        const double g = static_cast<double>(j) / ds;
        const SaddlePoint sp = solve_saddle(g);
        if (L >= g * (1.0 + 1.0 / (2.0 * sp.z_gamma))) return g;
    }
    throw std::runtime_error("gamma_star: no admissible gamma_star >= 1/d_star exists");
}

double log_binomial(double d, int d_star) {
    if (!(d >= static_cast<double>(d_star))) throw std::invalid_argument("log_binomial: requires d >= d_star");
    return std::lgamma(d + 1.0) - std::lgamma(static_cast<double>(d_star) + 1.0)
           - std::lgamma(d - static_cast<double>(d_star) + 1.0);
}

namespace {

// log{ h z (1-z) sqrt(2 l'' pi) / (h - 1) } at a saddle point
double log_prefactor(const SaddlePoint& sp) {
    return std::log(sp.h_val) + std::log(sp.z_gamma) + std::log1p(-sp.z_gamma)
           + 0.5 * std::log(2.0 * M_PI * sp.l_pp) - std::log(sp.h_val - 1.0);
}

}  // namespace

RegimeReport regime_constants(const ModelParams& p, double n, double alpha) {
    p.validate();
    if (!(n >= 1.0)) throw std::invalid_argument("regime_constants: n must be >= 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("regime_constants: alpha must be > 0");

    const int ds = p.d_star;
    const double dsd = static_cast<double>(ds);
    const double m = std::sqrt(2.0 * p.L * dsd / p.kappa);
    if (!(6.0 * m * p.d > 1.0))
        throw std::invalid_argument("regime_constants: requires 6*m*d > 1");

    RegimeReport r;
    r.gamma_star = gamma_star(p.L, ds);
    const SaddlePoint sp_star = solve_saddle(r.gamma_star);
    const SaddlePoint sp_2L = solve_saddle(2.0 * p.L);

    // fixed-sparsity window: the count enters only through its log
    const CountResult cnt_2L = count_exact(ds, static_cast<long>(std::floor(2.0 * p.L * dsd)));
    const double lower_second = std::exp(2.0 * std::log(p.g_min) - 8.0 * M_LN2
                                         - 2.0 * std::log1p(p.L2) - std::log(dsd)
                                         - cnt_2L.log_n_diff);
    r.c_star_lower = std::min(p.L2 * p.L2 / (2.0 * dsd * p.L_inf * p.L_inf), lower_second);
    r.c_star_upper = 2.0 * std::log(3.0) / (dsd * std::log(1.5));

    r.c1_lower = sp_2L.l_val;
    // grouping: twice the margin term, plus the (unsquared) prefactor log
    const double margin_2L = std::log(p.g_min) - std::log(17.0 * (p.sigma + p.L2));
    r.c2_lower = 2.0 * margin_2L + log_prefactor(sp_2L);
    r.c1_upper = sp_star.l_val;
    r.c2_upper = log_prefactor(sp_star) + std::log(sp_star.h_val) - std::log(sp_star.h_val - 1.0)
                 + std::log(std::log(1.5)) - std::log(5.0) - std::log(std::log(3.0));

    const double log6md = std::log(6.0 * m * p.d);
    r.thm1_cond_a = (p.L_inf * p.L_inf * dsd * log6md / n <= p.L2 * p.L2);

    const CountResult cnt_thm1 = count_exact(ds, static_cast<long>(std::floor(2.0 * p.L / p.kappa * dsd)));
    const double lhs_b = std::log(128.0) + 2.0 * std::log(p.sigma + p.L2) + std::log(dsd)
                         + cnt_thm1.log_n_diff + std::log(log6md)
                         - std::log(n) - 2.0 * std::log(p.g_min);
    r.thm1_cond_b = (lhs_b <= std::log(p.kappa));

    const CountResult cnt_star = count_exact(ds, std::lround(r.gamma_star * dsd));
    const double logC = log_binomial(p.d, ds);
    const double lhs_hyp1 = std::exp(2.0 * cnt_star.log_n_diff + std::log(logC)
                                     - 2.0 * std::log(n) - cnt_star.log_n1);
    r.thm2_hyp1 = (lhs_hyp1 >= alpha / 5.0);

    r.prop2_impossible = (dsd * (std::log(p.d) - std::log(dsd)) / n >= 1.0 / alpha);
    return r;
}

}  // namespace npselect
