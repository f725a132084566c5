#ifndef NPSELECT_SYNTH_HPP
#define NPSELECT_SYNTH_HPP

#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "npselect/model.hpp"
#include "npselect/select.hpp"

namespace npselect {

// Deterministic generator with explicit uniform/normal realizations, so that
// streams are bit-identical across platforms and thread counts.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // uniform on [0,1)
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // standard normal via Box-Muller; consumes two uniforms per draw
    double normal() {
        const double u1 = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
        const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

private:
    std::mt19937_64 engine_;
};

// Additive test function f(x) = sum_{j in J} a_j sqrt(2) cos(2 pi x_j).
// Its Fourier coefficients are theta_{e_j} = a_j and zero elsewhere, so the
// relevance functional, the smoothness budget, and both norm bounds are all
// available in closed form.
struct SparseAdditiveFunction {
    int d = 0;
    std::vector<int> relevant;      // sorted, 1-based
    std::vector<double> amplitudes; // same length as relevant, nonzero

    void validate() const;
    // checks a_j^2 >= kappa and a_j^2 <= L against params, |J| <= d_star
    void validate_against(const ModelParams& params) const;

    double eval(std::span<const double> x) const;
    std::set<int> pattern() const { return {relevant.begin(), relevant.end()}; }

    double l2_norm_sq() const;  // sum a_j^2 (uniform design)
    double l_inf_bound() const; // sum sqrt(2)|a_j|
};

// Q_j[f] = sum_{k: k_j != 0} theta_k^2: a_j^2 on the pattern, 0 elsewhere.
double relevance_q(const SparseAdditiveFunction& f, int j);

// Population coefficient <f, phi_k> for the additive family, computed by
// N-point equispaced quadrature of the per-coordinate factor integrals
// (exact for trigonometric content of frequency below N).
double population_coeff(const SparseAdditiveFunction& f, const MultiIndex& k, Trig trig,
                        int quad_points = 256);

// i.i.d. uniform design on [0,1]^d (satisfies the density lower bound with
// g_min = 1); deterministic given the generator state.
Matrix gen_design(std::size_t n, int d, Rng& rng);

// Y_i = f(X_i) + sigma * standard normal draw.
std::vector<double> gen_sample(const SparseAdditiveFunction& f, const Matrix& X,
                               double sigma, Rng& rng);

struct ExperimentConfig {
    ModelParams params;
    SparseAdditiveFunction function;
    double n = 0;
    int trials = 1;
    std::uint64_t base_seed = 0;
    bool cap_at_d_star = true;
    double threshold_scale = 1.0;  // multiplies the reference lambda
    int threads = 1;

    void validate() const;
};

struct TrialOutcome {
    int trial_index = 0;
    bool recovered = false;      // selected set equals the true pattern
    std::set<int> selected_set;
    std::uint64_t seed_used = 0;
};

struct McResult {
    double error_rate = 0.0;     // fraction of trials with recovered == false
    std::vector<TrialOutcome> outcomes;
};

// Independent replications with per-trial seed base_seed + trial_index; each
// trial draws a fresh design and sample and runs the threshold selector.
// Trials may run on several threads; outcomes and error_rate do not depend
// on the thread count.
McResult mc_error(const ExperimentConfig& config);

struct OrthCheckResult {
    double max_offdiag = 0.0;
    double max_diag = 0.0;   // reported separately; the bound targets distinct pairs
    double bound = 0.0;      // n / N1(d*, floor(d* L))^2
    bool satisfied = false;  // max_offdiag <= bound
};

// Empirical Gram averages (1/n) sum_i phi(X_i) phi'(X_i) over all distinct
// pairs of basis functions with canonical frequency in S_{m,d_star}
// (both trig branches, plus the constant function).
OrthCheckResult orth_check(const Matrix& X, double m, int d_star, double L);

// 4 |S| A^4 n^2 { 1 + |S| eps / (4 n A^2) }: the chi-square style bound on
// KL(P1, P0) for the Rademacher prior over S.
double fano_kl_bound(long s_size, double a, double n, double eps);

struct LowerBoundConditions {
    bool hyp1 = false;
    bool prop2 = false;
    double a_value = 0.0;        // A = (N1 - N2)^{-1/2} at gamma*
    bool priors_in_class = false;  // A^2 N1 < 1/(2 z_{gamma*}) + 1
    bool alpha_in_range = false;   // alpha < (log3 - log2)/log3
    double gamma_star = 0.0;
};

// Evaluates both impossibility conditions with exact counts at gamma*.
LowerBoundConditions lower_bound_conditions(const ModelParams& params, double n, double alpha);

}  // namespace npselect

#endif
