#ifndef NPSELECT_THETA_HPP
#define NPSELECT_THETA_HPP

#include <vector>

#include "npselect/model.hpp"

namespace npselect {

// Solution of l_gamma'(z) = 0 where l_gamma(z) = log h(z) - gamma log z and
// h is the theta series sum_{r in Z} z^{r^2}. Solved in the variable
// y = -log z, where phi(y) = e^{-y} h'(e^{-y})/h(e^{-y}) is strictly
// decreasing, so z_gamma = exp(-y_gamma) with phi(y_gamma) = gamma.
struct SaddlePoint {
    double gamma = 0.0;
    double y_gamma = 0.0;
    double z_gamma = 0.0;
    double h_val = 0.0;   // h(z_gamma)
    double l_val = 0.0;   // l_gamma(z_gamma) = log h + gamma * y
    double l_pp = 0.0;    // l_gamma''(z_gamma) = -phi'(y_gamma)/z^2, positive
    double tol = 0.0;     // residual |phi(y_gamma) - gamma| achieved
};

// Logs of the saddle-point equivalents of the exact ball counts, with the
// o(1) remainders dropped:
//   log N1 ~ d* l - log( z (1-z) sqrt(2 pi l'' d*) )
//   log N2 =  log N1 - log h
//   log N  ~ d* l - (1/2) log d* - log( h z (1-z) sqrt(2 pi l'') / (h-1) )
struct AsymptoticCount {
    int d_star = 0;
    double gamma = 0.0;
    double log_n1_asym = 0.0;
    double log_n2_asym = 0.0;
    double log_n_diff_asym = 0.0;
};

struct CurvePoint {
    double gamma = 0.0;
    double z_gamma = 0.0;
    double l_value = 0.0;
};

// Threshold constants separating the consistency regime from the
// impossibility regime, plus the feasibility flags for a concrete
// (n, d, d*, alpha) instance.
struct RegimeReport {
    double c_star_lower = 0.0;  // (log d)/n <= c_star_lower => consistent (fixed sparsity)
    double c_star_upper = 0.0;  // (log d)/n >= c_star_upper => impossible
    double c1_lower = 0.0;      // l_{2L}(z_{2L})
    double c2_lower = 0.0;
    double c1_upper = 0.0;      // l_{gamma*}(z_{gamma*})
    double c2_upper = 0.0;
    double gamma_star = 0.0;    // largest j/d* with L >= gamma*(1 + 1/(2 z_{gamma*}))
    bool thm1_cond_a = false;   // L_inf^2 d* log(6md) / n <= L2^2
    bool thm1_cond_b = false;   // 128 (sigma+L2)^2 d* N(d*,2L/kappa) log(6md) / (n g_min^2) <= kappa
    bool thm2_hyp1 = false;     // (N1-N2)^2 log C(d,d*) / (n^2 N1) >= alpha/5 at gamma*
    bool prop2_impossible = false;  // d* (log d - log d*) / n >= 1/alpha
};

// Theta series h(z) = 1 + 2 sum_{j>=1} z^{j^2}, truncated once the next
// term falls below tol times the running sum. Requires 0 <= z < 1.
double theta_h(double z, double tol = 1e-15);

// phi(y) = sum k^2 e^{-y k^2} / sum e^{-y k^2} over k in Z (y > 0),
// strictly decreasing from +inf to 0.
double phi(double y);

// Analytic derivative of phi: minus the variance of k^2 under the weights
// e^{-y k^2}, always strictly negative.
double phi_prime(double y);

// Finds y_gamma with |phi(y_gamma) - gamma| <= tol by bracketing bisection
// followed by Newton refinement. Throws std::runtime_error if the iteration
// budget is exhausted before reaching tol.
SaddlePoint solve_saddle(double gamma, double tol = 1e-12);

// Comparisons against exact counts are faithful when gamma * d_star is an
// integer (the exact side rounds the squared radius down); not enforced.
AsymptoticCount asymptotic_counts(int d_star, double gamma);

// One (gamma, z_gamma, l_gamma(z_gamma)) row per grid value; the grid must
// be positive and strictly increasing.
std::vector<CurvePoint> figure_curves(const std::vector<double>& gamma_grid);

// Largest gamma = j/d_star (integer j >= 1, scanned downward from
// floor(L*d_star)) with L >= gamma*(1 + 1/(2 z_gamma)). Throws
// std::runtime_error when no admissible candidate exists.
double gamma_star(double L, int d_star);

// log of binomial(d, d_star) via log-gamma; d may be any real >= d_star.
double log_binomial(double d, int d_star);

RegimeReport regime_constants(const ModelParams& params, double n, double alpha);

}  // namespace npselect

#endif
