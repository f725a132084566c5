#ifndef NPSELECT_SELECT_HPP
#define NPSELECT_SELECT_HPP

#include <functional>
#include <set>
#include <span>
#include <vector>

#include "npselect/model.hpp"
#include "npselect/multi_index.hpp"

namespace npselect {

// Each canonical frequency k carries a cosine and a sine branch; the sine
// branch realizes the basis function of -k.
enum class Trig { cos, sin };

// Outcome of thresholding: the selected coordinate set, one witness record
// per coefficient whose magnitude exceeded the threshold, the highest
// support level examined, and whether the d*-cap stopped the scan.
struct SelectionResult {
    struct Record {
        MultiIndex k;
        Trig trig;
        double value;
    };
    std::set<int> selected;
    std::vector<Record> records;
    int levels_visited = 0;
    bool stopped_early = false;
};

using DensityFn = std::function<double(std::span<const double>)>;
using CoeffFn = std::function<double(const MultiIndex&, Trig)>;

// Uniform design density on [0,1]^d (g == 1, g_min = 1).
DensityFn uniform_density();

// Fixed-order pairwise (tree) summation; used for every sample average so
// results are deterministic and rounding stays low at n = 1e6.
double pairwise_sum(std::span<const double> v);

// Basis function value: 1 for the zero index, else sqrt(2) cos(2 pi k.x) or
// sqrt(2) sin(2 pi k.x); the inner product touches only support coordinates.
// k must be canonical (first nonzero value positive); the zero index admits
// only the cos branch.
double basis_eval(const MultiIndex& k, Trig trig, std::span<const double> x);

// Empirical coefficient (1/n) sum_i phi_k(X_i)/g(X_i) * Y_i in fixed index
// order. Throws std::runtime_error on a nonpositive density value.
double empirical_coeff(const Matrix& X, std::span<const double> Y,
                       const DensityFn& density_at, const MultiIndex& k, Trig trig);

// m = sqrt(2 L d*/kappa), lambda = 4 (sigma+L2) sqrt(d* log(6md) / (n g_min^2)),
// radius_sq = floor(m^2).
TuningParams tuning(const ModelParams& params, double n);

// Thresholding over the coefficient provider: scans support levels
// K = 1..d*; every canonical k with |coeff| > lambda (strict) on either
// branch contributes its support coordinates to the selected set. With
// cap_at_d_star the scan stops at the first level boundary where the
// selected set has reached d* coordinates.
SelectionResult select_by_threshold(const CoeffFn& coeff, int d, const ModelParams& params,
                                    const TuningParams& tuning, bool cap_at_d_star);

// Same, with coefficients estimated from data.
SelectionResult select_variables(const Matrix& X, std::span<const double> Y,
                                 const DensityFn& density_at, const ModelParams& params,
                                 const TuningParams& tuning, bool cap_at_d_star);

}  // namespace npselect

#endif
