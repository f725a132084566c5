#include "npselect/synth.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "npselect/lattice.hpp"
#include "npselect/theta.hpp"

namespace npselect {

void SparseAdditiveFunction::validate() const {
    if (d < 1) throw std::invalid_argument("SparseAdditiveFunction: d must be >= 1");
    if (relevant.size() != amplitudes.size())
        throw std::invalid_argument("SparseAdditiveFunction: relevant/amplitudes length mismatch");
    int prev = 0;
    for (std::size_t i = 0; i < relevant.size(); ++i) {
        if (relevant[i] <= prev || relevant[i] > d)
            throw std::invalid_argument("SparseAdditiveFunction: relevant must be strictly increasing in {1..d}");
        if (amplitudes[i] == 0.0)
            throw std::invalid_argument("SparseAdditiveFunction: amplitudes must be nonzero");
        prev = relevant[i];
    }
}

void SparseAdditiveFunction::validate_against(const ModelParams& params) const {
    validate();
    if (static_cast<int>(relevant.size()) > params.d_star)
        throw std::invalid_argument("SparseAdditiveFunction: pattern larger than d_star");
    for (double a : amplitudes) {
        if (a * a < params.kappa)
            throw std::invalid_argument("SparseAdditiveFunction: amplitude below relevance level kappa");
        if (a * a > params.L)
            throw std::invalid_argument("SparseAdditiveFunction: amplitude breaks the smoothness budget L");
    }
}

double SparseAdditiveFunction::eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != d)
        throw std::invalid_argument("SparseAdditiveFunction: point dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < relevant.size(); ++i)
        s += amplitudes[i] * M_SQRT2 * std::cos(2.0 * M_PI * x[static_cast<std::size_t>(relevant[i]) - 1]);
    return s;
}

double SparseAdditiveFunction::l2_norm_sq() const {
    double s = 0.0;
    for (double a : amplitudes) s += a * a;
    return s;
}

double SparseAdditiveFunction::l_inf_bound() const {
    double s = 0.0;
    for (double a : amplitudes) s += M_SQRT2 * std::abs(a);
    return s;
}

double relevance_q(const SparseAdditiveFunction& f, int j) {
    f.validate();
    if (j < 1 || j > f.d) throw std::invalid_argument("relevance_q: j out of range");
    for (std::size_t i = 0; i < f.relevant.size(); ++i)
        if (f.relevant[i] == j) return f.amplitudes[i] * f.amplitudes[i];
    return 0.0;
}

double population_coeff(const SparseAdditiveFunction& f, const MultiIndex& k, Trig trig,
                        int quad_points) {
    f.validate();
    if (k.dimension != f.d) throw std::invalid_argument("population_coeff: dimension mismatch");
    if (quad_points < 4) throw std::invalid_argument("population_coeff: quad_points too small");
    if (k.is_zero()) return 0.0;  // the additive cosine family has mean zero
    if (!k.is_canonical()) throw std::invalid_argument("population_coeff: k must be canonical");

    const int N = quad_points;
    // 1-d quadrature of int_0^1 e^{2 pi i v x} u(x) dx on the equispaced grid
    const auto factor = [N](int v, bool with_cos) {
        std::complex<double> acc{0.0, 0.0};
        for (int i = 0; i < N; ++i) {
            const double x = static_cast<double>(i) / N;
            const double u = with_cos ? M_SQRT2 * std::cos(2.0 * M_PI * x) : 1.0;
            acc += std::polar(u, 2.0 * M_PI * v * x);
        }
        return acc / static_cast<double>(N);
    };

    // <f, phi_k> = sqrt(2) sum_j a_j Re/Im prod_s int e^{2 pi i v_s x} u_js(x) dx,
    // u_js = sqrt(2) cos(2 pi x) when s == j and 1 otherwise
    std::vector<std::complex<double>> fac_plain(k.support.size());
    std::vector<std::complex<double>> fac_cos(k.support.size());
    for (std::size_t i = 0; i < k.support.size(); ++i) {
        fac_plain[i] = factor(k.values[i], false);
        fac_cos[i] = factor(k.values[i], true);
    }
    const std::complex<double> fac0 = factor(0, true);

    double total = 0.0;
    for (std::size_t t = 0; t < f.relevant.size(); ++t) {
        const int j = f.relevant[t];
        std::complex<double> prod{1.0, 0.0};
        bool j_in_support = false;
        for (std::size_t i = 0; i < k.support.size(); ++i) {
            const bool is_j = (k.support[i] == j);
            j_in_support = j_in_support || is_j;
            prod *= is_j ? fac_cos[i] : fac_plain[i];
        }
        if (!j_in_support) prod *= fac0;
        total += f.amplitudes[t] * (trig == Trig::cos ? prod.real() : prod.imag());
    }
    return M_SQRT2 * total;
}

Matrix gen_design(std::size_t n, int d, Rng& rng) {
    if (n < 1 || d < 1) throw std::invalid_argument("gen_design: n and d must be >= 1");
    Matrix X(n, static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < static_cast<std::size_t>(d); ++j)
            X(i, j) = rng.uniform01();
    return X;
}

std::vector<double> gen_sample(const SparseAdditiveFunction& f, const Matrix& X,
                               double sigma, Rng& rng) {
    f.validate();
    if (X.cols() != static_cast<std::size_t>(f.d))
        throw std::invalid_argument("gen_sample: design width mismatch");
    std::vector<double> y(X.rows());
    for (std::size_t i = 0; i < X.rows(); ++i)
        y[i] = f.eval(X.row(i)) + sigma * rng.normal();
    return y;
}

void ExperimentConfig::validate() const {
    params.validate();
    function.validate_against(params);
    if (function.d != params.ambient_dim())
        throw std::invalid_argument("ExperimentConfig: function dimension differs from params.d");
    if (!(n >= 1.0)) throw std::invalid_argument("ExperimentConfig: n must be >= 1");
    if (trials < 1) throw std::invalid_argument("ExperimentConfig: trials must be >= 1");
    if (!(threshold_scale > 0.0)) throw std::invalid_argument("ExperimentConfig: threshold_scale must be > 0");
    if (threads < 1) throw std::invalid_argument("ExperimentConfig: threads must be >= 1");
}

McResult mc_error(const ExperimentConfig& config) {
    config.validate();
    const std::size_t n = static_cast<std::size_t>(config.n);
    const int d = config.params.ambient_dim();
    TuningParams tune = tuning(config.params, config.n);
    tune.lambda *= config.threshold_scale;
    const std::set<int> truth = config.function.pattern();

    McResult result;
    result.outcomes.resize(static_cast<std::size_t>(config.trials));

    std::exception_ptr first_error;
    std::mutex error_mutex;

    const auto run_trial = [&](int t) {
        try {
            const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(t);
            Rng rng(seed);
            const Matrix X = gen_design(n, d, rng);
            const std::vector<double> Y = gen_sample(config.function, X, config.params.sigma, rng);
            SelectionResult sel = select_variables(X, Y, uniform_density(), config.params, tune,
                                                   config.cap_at_d_star);
            TrialOutcome& out = result.outcomes[static_cast<std::size_t>(t)];
            out.trial_index = t;
            out.selected_set = std::move(sel.selected);
            out.recovered = (out.selected_set == truth);
            out.seed_used = seed;
        } catch (const std::exception& e) {
            throw std::runtime_error("mc_error: trial " + std::to_string(t) + ": " + e.what());
        }
    };

    const int nthreads = std::min(config.threads, config.trials);
    if (nthreads <= 1) {
        for (int t = 0; t < config.trials; ++t) run_trial(t);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        std::atomic<int> next{0};
        for (int w = 0; w < nthreads; ++w) {
            pool.emplace_back([&] {
                for (int t = next.fetch_add(1); t < config.trials; t = next.fetch_add(1)) {
                    try {
                        run_trial(t);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    int errors = 0;
    for (const TrialOutcome& out : result.outcomes)
        if (!out.recovered) ++errors;
    result.error_rate = static_cast<double>(errors) / static_cast<double>(config.trials);
    return result;
}

OrthCheckResult orth_check(const Matrix& X, double m, int d_star, double L) {
    const std::size_t n = X.rows();
    if (n < 1) throw std::invalid_argument("orth_check: empty design");
    const int d = static_cast<int>(X.cols());
    if (d_star < 1 || d_star > d) throw std::invalid_argument("orth_check: requires 1 <= d_star <= d");
    if (!(L > 0.0)) throw std::invalid_argument("orth_check: L must be > 0");

    // basis functions: the constant plus both branches of each canonical k
    struct Fn {
        MultiIndex k;
        Trig trig;
    };
    std::vector<Fn> fns;
    fns.push_back({MultiIndex::zero(d), Trig::cos});
    for (const MultiIndex& k : enumerate_ball(d, m, d_star)) {
        fns.push_back({k, Trig::cos});
        fns.push_back({k, Trig::sin});
    }
    if (fns.size() < 2) throw std::invalid_argument("orth_check: empty frequency set");

    // value table: one row per basis function
    const std::size_t p = fns.size();
    std::vector<std::vector<double>> vals(p, std::vector<double>(n));
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t i = 0; i < n; ++i)
            vals[a][i] = basis_eval(fns[a].k, fns[a].trig, X.row(i));

    OrthCheckResult res;
    std::vector<double> prod(n);
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = a; b < p; ++b) {
            for (std::size_t i = 0; i < n; ++i) prod[i] = vals[a][i] * vals[b][i];
            const double g = pairwise_sum(prod) / static_cast<double>(n);
            if (a == b) {
                res.max_diag = std::max(res.max_diag, g);
            } else {
                res.max_offdiag = std::max(res.max_offdiag, std::abs(g));
            }
        }
    }

    const CountResult n1 = count_exact(d_star, static_cast<long>(std::floor(static_cast<double>(d_star) * L)));
    const double n1d = std::exp(n1.log_n1);
    res.bound = static_cast<double>(n) / (n1d * n1d);
    res.satisfied = (res.max_offdiag <= res.bound);
    return res;
}

double fano_kl_bound(long s_size, double a, double n, double eps) {
    if (s_size < 1) throw std::invalid_argument("fano_kl_bound: |S| must be >= 1");
    if (!(a > 0.0) || !(n > 0.0) || !(eps >= 0.0))
        throw std::invalid_argument("fano_kl_bound: requires A > 0, n > 0, eps >= 0");
    const double s = static_cast<double>(s_size);
    return 4.0 * s * a * a * a * a * n * n * (1.0 + s * eps / (4.0 * n * a * a));
}

LowerBoundConditions lower_bound_conditions(const ModelParams& params, double n, double alpha) {
    params.validate();
    if (!(n >= 1.0)) throw std::invalid_argument("lower_bound_conditions: n must be >= 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("lower_bound_conditions: alpha must be > 0");

    LowerBoundConditions out;
    out.alpha_in_range = (alpha < (std::log(3.0) - std::log(2.0)) / std::log(3.0));
    out.gamma_star = gamma_star(params.L, params.d_star);
    const SaddlePoint sp = solve_saddle(out.gamma_star);
    const double dsd = static_cast<double>(params.d_star);
    const CountResult cnt = count_exact(params.d_star, std::lround(out.gamma_star * dsd));

    out.a_value = std::exp(-0.5 * cnt.log_n_diff);
    const double logC = log_binomial(params.d, params.d_star);
    const double lhs = std::exp(2.0 * cnt.log_n_diff + std::log(logC)
                                - 2.0 * std::log(n) - cnt.log_n1);
    out.hyp1 = (lhs >= alpha / 5.0);
    out.prop2 = (dsd * (std::log(params.d) - std::log(dsd)) / n >= 1.0 / alpha);
    // class membership of the Rademacher priors: A^2 N1 < 1/(2 z) + 1
    out.priors_in_class = (std::exp(cnt.log_n1 - cnt.log_n_diff) < 1.0 / (2.0 * sp.z_gamma) + 1.0);
    return out;
}

}  // namespace npselect
