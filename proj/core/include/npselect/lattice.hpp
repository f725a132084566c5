#ifndef NPSELECT_LATTICE_HPP
#define NPSELECT_LATTICE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "npselect/multi_index.hpp"

namespace npselect {

// Exact lattice-point counts in the Euclidean ball of Z^{d*}:
//   n1     = #{k in Z^{d*} : |k|^2 <= radius_sq}
//   n2     = #{k in Z^{d*} : |k|^2 <= radius_sq, k_1 = 0}
//   n_diff = n1 - n2   (points with k_1 != 0)
// Counts are exact big integers; log_* carry natural logs for regime
// arithmetic (-inf when the count is 0).
struct CountResult {
    mpz_class n1;
    mpz_class n2;
    mpz_class n_diff;
    double log_n1 = 0.0;
    double log_n2 = 0.0;
    double log_n_diff = 0.0;
};

// Power-series coefficients a_0..a_R of h(z)^dimension, where
// h(z) = sum_{r in Z} z^{r^2}. a_r counts the representations of r as a
// sum of `dimension` integer squares (signed, ordered).
struct RepSeries {
    int dimension = 0;
    long radius_sq_max = 0;
    std::vector<mpz_class> coeffs;
};

// Natural log of a nonnegative big integer; -inf for 0.
double log_mpz(const mpz_class& v);

// Coefficients a_0..a_R of h(z)^dimension by repeated squaring of the
// one-dimensional series (1 at r=0, 2 at each perfect square) truncated
// at degree R.
RepSeries representation_numbers(int dimension, long radius_sq_max);

// Exact N1/N2/N for the ball |k|^2 <= radius_sq in Z^{d_star}. Callers
// working with the real radius bound gamma pass radius_sq = floor(gamma*d*):
// integer vectors satisfy |k| <= m iff |k|^2 <= floor(m^2).
CountResult count_exact(int d_star, long radius_sq);

// d* log(6 m d): log of the (6md)^{d*} cardinality bound on Card(S_{m,d*})+1.
double card_bound(double m, long d, int d_star);

// Enumerates the canonical representatives (first nonzero value positive)
// of the nonzero members of S_{m,ell} = {k : |k|^2 <= radius_sq, |k|_0 <= ell},
// grouped by increasing |k|_0 so that a stepwise consumer can process one
// support level at a time. Within a level the order is support-lexicographic,
// then value-lexicographic. Each canonical k appears exactly once; the
// negated partner -k is realized by the sin branch of the basis.
class BallEnumerator {
public:
    BallEnumerator(int d, double m, int ell);
    BallEnumerator(int d, long radius_sq, int ell);

    // Next multi-index, or nullopt when the stream is exhausted.
    std::optional<MultiIndex> next();

    int current_level() const { return level_; }

private:
    void fill_level();

    int d_;
    long radius_sq_;
    int ell_;
    int level_ = 0;
    std::size_t pos_ = 0;
    std::vector<MultiIndex> buffer_;
};

// All canonical representatives with exactly |k|_0 = level (see
// BallEnumerator for the ordering).
std::vector<MultiIndex> ball_level(int d, long radius_sq, int level);

// Convenience: the whole stream collected level by level.
std::vector<MultiIndex> enumerate_ball(int d, double m, int ell);

}  // namespace npselect

#endif
