#include "npselect/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace npselect {

std::string MultiIndex::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (i) os << ',';
        os << support[i] << ':' << values[i];
    }
    os << ')';
    return os.str();
}

double log_mpz(const mpz_class& v) {
    if (v == 0) return -std::numeric_limits<double>::infinity();
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * M_LN2;
}

namespace {

// Truncated product of two series mod degree R+1.
std::vector<mpz_class> series_mul(const std::vector<mpz_class>& a,
                                  const std::vector<mpz_class>& b, long R) {
    std::vector<mpz_class> out(static_cast<std::size_t>(R) + 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        const std::size_t jmax = std::min(b.size(), static_cast<std::size_t>(R) + 1 - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

}  // namespace

RepSeries representation_numbers(int dimension, long radius_sq_max) {
    if (dimension < 1) throw std::invalid_argument("representation_numbers: dimension must be >= 1");
    if (radius_sq_max < 0) throw std::invalid_argument("representation_numbers: radius_sq_max must be >= 0");
    const long R = radius_sq_max;

    // one-dimensional theta series: 1 at r=0, 2 at every perfect square
    std::vector<mpz_class> base(static_cast<std::size_t>(R) + 1, mpz_class(0));
    base[0] = 1;
    for (long j = 1; j * j <= R; ++j) base[static_cast<std::size_t>(j * j)] = 2;

    std::vector<mpz_class> result(static_cast<std::size_t>(R) + 1, mpz_class(0));
    result[0] = 1;
    unsigned e = static_cast<unsigned>(dimension);
    while (e) {
        if (e & 1u) result = series_mul(result, base, R);
        e >>= 1u;
        if (e) base = series_mul(base, base, R);
    }
    return RepSeries{dimension, R, std::move(result)};
}

CountResult count_exact(int d_star, long radius_sq) {
    if (d_star < 1) throw std::invalid_argument("count_exact: d_star must be >= 1");
    if (radius_sq < 0) throw std::invalid_argument("count_exact: radius_sq must be >= 0");

    CountResult out;
    const RepSeries full = representation_numbers(d_star, radius_sq);
    out.n1 = 0;
    for (const auto& a : full.coeffs) out.n1 += a;

    if (d_star == 1) {
        // the slice k_1 = 0 of Z^1 is the single origin point
        out.n2 = 1;
    } else {
        const RepSeries slice = representation_numbers(d_star - 1, radius_sq);
        out.n2 = 0;
        for (const auto& a : slice.coeffs) out.n2 += a;
    }
    out.n_diff = out.n1 - out.n2;
    out.log_n1 = log_mpz(out.n1);
    out.log_n2 = log_mpz(out.n2);
    out.log_n_diff = log_mpz(out.n_diff);
    return out;
}

double card_bound(double m, long d, int d_star) {
    if (!(6.0 * m * static_cast<double>(d) > 1.0))
        throw std::invalid_argument("card_bound: requires 6*m*d > 1");
    if (d_star < 1) throw std::invalid_argument("card_bound: d_star must be >= 1");
    return static_cast<double>(d_star) * std::log(6.0 * m * static_cast<double>(d));
}

namespace {

long radius_sq_from_m(double m) {
    if (!(m > 0.0)) throw std::invalid_argument("enumerate_ball: m must be > 0");
    return static_cast<long>(std::floor(m * m));
}

// Appends to `out` every way of assigning values to supp[pos..] with squared
// norm budget `budget`; values nonzero, the very first assigned value (pos==0)
// positive. Values iterate in increasing order, which makes the output
// value-lexicographic for a fixed support.
void assign_values(const std::vector<int>& supp, std::size_t pos, long budget,
                   std::vector<int>& vals, int d,
                   std::vector<MultiIndex>& out) {
    if (pos == supp.size()) {
        MultiIndex k;
        k.dimension = d;
        k.support = supp;
        k.values = vals;
        out.push_back(std::move(k));
        return;
    }
    const std::size_t rest = supp.size() - pos - 1;  // each remaining coord needs >= 1
    const long vmax_sq = budget - static_cast<long>(rest);
    if (vmax_sq < 1) return;
    const int vmax = static_cast<int>(std::floor(std::sqrt(static_cast<double>(vmax_sq))));
    const int vmin = (pos == 0) ? 1 : -vmax;
    for (int v = vmin; v <= vmax; ++v) {
        if (v == 0) continue;
        const long used = static_cast<long>(v) * v;
        if (used > vmax_sq) continue;
        vals.push_back(v);
        assign_values(supp, pos + 1, budget - used, vals, d, out);
        vals.pop_back();
    }
}

void supports_rec(int d, int level, int next, std::vector<int>& supp, long radius_sq,
                  std::vector<MultiIndex>& out) {
    if (static_cast<int>(supp.size()) == level) {
        std::vector<int> vals;
        vals.reserve(level);
        assign_values(supp, 0, radius_sq, vals, d, out);
        return;
    }
    const int need = level - static_cast<int>(supp.size());
    for (int j = next; j <= d - need + 1; ++j) {
        supp.push_back(j);
        supports_rec(d, level, j + 1, supp, radius_sq, out);
        supp.pop_back();
    }
}

}  // namespace

std::vector<MultiIndex> ball_level(int d, long radius_sq, int level) {
    if (d < 1) throw std::invalid_argument("ball_level: d must be >= 1");
    if (level < 1 || level > d) throw std::invalid_argument("ball_level: level must be in {1..d}");
    std::vector<MultiIndex> out;
    if (radius_sq < level) return out;  // every nonzero coord contributes >= 1
    std::vector<int> supp;
    supp.reserve(level);
    supports_rec(d, level, 1, supp, radius_sq, out);
    return out;
}

BallEnumerator::BallEnumerator(int d, double m, int ell)
    : BallEnumerator(d, radius_sq_from_m(m), ell) {}

BallEnumerator::BallEnumerator(int d, long radius_sq, int ell)
    : d_(d), radius_sq_(radius_sq), ell_(ell) {
    if (d < 1) throw std::invalid_argument("enumerate_ball: d must be >= 1");
    if (ell < 1 || ell > d) throw std::invalid_argument("enumerate_ball: requires 1 <= ell <= d");
    if (radius_sq < 0) throw std::invalid_argument("enumerate_ball: radius_sq must be >= 0");
}

void BallEnumerator::fill_level() {
    while (level_ < ell_) {
        ++level_;
        buffer_ = ball_level(d_, radius_sq_, level_);
        pos_ = 0;
        if (!buffer_.empty()) return;
    }
    buffer_.clear();
    pos_ = 0;
}

std::optional<MultiIndex> BallEnumerator::next() {
    if (pos_ >= buffer_.size()) {
        fill_level();
        if (buffer_.empty()) return std::nullopt;
    }
    return buffer_[pos_++];
}

std::vector<MultiIndex> enumerate_ball(int d, double m, int ell) {
    BallEnumerator en(d, m, ell);
    std::vector<MultiIndex> out;
    while (auto k = en.next()) out.push_back(std::move(*k));
    return out;
}

}  // namespace npselect
