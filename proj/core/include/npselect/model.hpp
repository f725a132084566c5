#ifndef NPSELECT_MODEL_HPP
#define NPSELECT_MODEL_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace npselect {

// Constants of the regression model and function class:
//   d       ambient dimension (real-valued so that regime studies may use
//           astronomically large d, where only log d enters any formula;
//           data-driven selection requires an integral d)
//   d_star  intrinsic dimension bound |J| <= d*
//   g_min   lower bound on the design density over [0,1]^d
//   L       smoothness budget: sum_k k_j^2 theta_k^2 <= L for every j
//   kappa   relevance level: Q_j = sum_{k: k_j != 0} theta_k^2 >= kappa on J
//   sigma   noise scale
//   L2      bound on the density-weighted quadratic mean of f
//   L_inf   bound on the essential sup of f
struct ModelParams {
    double d = 0.0;
    int d_star = 0;
    double g_min = 0.0;
    double L = 0.0;
    double kappa = 0.0;
    double sigma = 0.0;
    double L2 = 0.0;
    double L_inf = 0.0;

    void validate() const {
        if (!(d >= 1.0)) throw std::invalid_argument("ModelParams: d must be >= 1");
        if (d_star < 1) throw std::invalid_argument("ModelParams: d_star must be >= 1");
        if (static_cast<double>(d_star) > d)
            throw std::invalid_argument("ModelParams: d_star must not exceed d");
        if (!(g_min > 0.0)) throw std::invalid_argument("ModelParams: g_min must be > 0");
        if (!(L > 0.0)) throw std::invalid_argument("ModelParams: L must be > 0");
        if (!(kappa > 0.0)) throw std::invalid_argument("ModelParams: kappa must be > 0");
        if (!(sigma >= 0.0)) throw std::invalid_argument("ModelParams: sigma must be >= 0");
        if (!(L2 > 0.0)) throw std::invalid_argument("ModelParams: L2 must be > 0");
        if (!(L_inf > 0.0)) throw std::invalid_argument("ModelParams: L_inf must be > 0");
        if (L2 > L_inf) throw std::invalid_argument("ModelParams: L2 must not exceed L_inf");
    }

    // d as an ambient integer dimension for data-driven operations.
    int ambient_dim() const {
        double r = std::round(d);
        if (!(r >= 1.0) || std::abs(d - r) > 1e-9 || r > 2e9)
            throw std::invalid_argument("ModelParams: d must be a positive integer here");
        return static_cast<int>(r);
    }
};

// Threshold-estimator tuning: m = sqrt(2 L d*/kappa), the threshold lambda,
// and the integer squared radius floor(m^2) used by all exact enumeration.
struct TuningParams {
    double m = 0.0;
    double lambda = 0.0;
    long radius_sq = 0;
};

// Row-major n x d matrix of design points in [0,1]^d.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(data_.data() + i * cols_, cols_);
    }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace npselect

#endif
