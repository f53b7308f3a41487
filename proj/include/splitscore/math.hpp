// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace splitscore {

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
inline constexpr double kSqrt2 = 1.4142135623730950488016887;

/// Standard normal density.
inline double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

/// Standard normal CDF via erfc, accurate in both tails.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

/// Standard normal quantile, Wichura's PPND16 rational approximations
/// (relative accuracy ~1e-16 over the full open interval).
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("normal_quantile: p must lie in (0, 1)");
    }
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                  6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
              1.3314166789178437745e2) * r + 3.3871328727963666080e0);
        const double den =
            (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                  3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
              4.2313330701600911252e1) * r + 1.0);
        return q * num / den;
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
        x = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        x = num / den;
    }
    return (q < 0.0) ? -x : x;
}

/// Gauss-Hermite rule for integrals of e^{-x^2} f(x) over the real line.
/// Nodes are found by Newton iteration on the orthonormal Hermite recurrence.
class GaussHermite {
  public:
    explicit GaussHermite(int n) {
        if (n < 2 || n > 512) throw std::invalid_argument("GaussHermite: order out of range");
        nodes_.resize(static_cast<std::size_t>(n));
        weights_.resize(static_cast<std::size_t>(n));
        const double pim4 = 0.75112554446494248286;  // pi^{-1/4}
        const int half = (n + 1) / 2;
        double z = 0.0;
        for (int i = 0; i < half; ++i) {
            if (i == 0) {
                z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
            } else if (i == 1) {
                z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
            } else if (i == 2) {
                z = 1.86 * z - 0.86 * nodes_[0];
            } else if (i == 3) {
                z = 1.91 * z - 0.91 * nodes_[1];
            } else {
                z = 2.0 * z - nodes_[static_cast<std::size_t>(i) - 2];
            }
            double pp = 0.0;
            for (int iter = 0;; ++iter) {
                double p1 = pim4;
                double p2 = 0.0;
                for (int j = 1; j <= n; ++j) {
                    const double p3 = p2;
                    p2 = p1;
                    p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
                }
                pp = std::sqrt(2.0 * n) * p2;
                const double dz = p1 / pp;
                z -= dz;
                if (std::fabs(dz) <= 1e-15 * std::max(1.0, std::fabs(z))) break;
                if (iter > 200) throw std::runtime_error("GaussHermite: Newton failed to converge");
            }
            const auto idx = static_cast<std::size_t>(i);
            nodes_[idx] = z;
            weights_[idx] = 2.0 / (pp * pp);
            nodes_[static_cast<std::size_t>(n - 1 - i)] = -z;
            weights_[static_cast<std::size_t>(n - 1 - i)] = weights_[idx];
        }
    }

    /// E[f(Z)] for Z ~ N(0,1).
    template <typename F>
    double expect_standard_normal(F&& f) const {
        const double inv_sqrt_pi = 0.56418958354775628695;
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            acc += weights_[i] * f(kSqrt2 * nodes_[i]);
        }
        return inv_sqrt_pi * acc;
    }

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

  private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

}  // namespace splitscore
