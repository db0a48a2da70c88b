#pragma once

#include <cmath>
#include <vector>

#include "spinevol/core.hpp"

namespace spinevol {

// Natural interpolating cubic spline with first-derivative evaluation.
// Evaluation outside the knot range extends the boundary tangent linearly.
class CubicSpline {
public:
    CubicSpline() = default;

    CubicSpline(std::vector<double> xs, std::vector<double> ys)
        : x_(std::move(xs)), y_(std::move(ys)) {
        if (x_.size() != y_.size() || x_.empty())
            throw InvalidInput("spline needs matching non-empty knot arrays");
        for (size_t i = 1; i < x_.size(); ++i)
            if (x_[i] <= x_[i - 1]) throw InvalidInput("spline knots must be strictly increasing");
        size_t n = x_.size();
        m_.assign(n, 0.0);
        if (n < 3) return;
        // Tridiagonal system for second derivatives, natural ends.
        std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
        for (size_t i = 1; i + 1 < n; ++i) {
            double h0 = x_[i] - x_[i - 1];
            double h1 = x_[i + 1] - x_[i];
            a[i] = h0 / 6.0;
            b[i] = (h0 + h1) / 3.0;
            c[i] = h1 / 6.0;
            d[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
        }
        for (size_t i = 2; i + 1 < n; ++i) {
            double f = a[i] / b[i - 1];
            b[i] -= f * c[i - 1];
            d[i] -= f * d[i - 1];
        }
        for (size_t i = n - 2; i >= 1; --i) {
            m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
            if (i == 1) break;
        }
    }

    double min_x() const { return x_.front(); }
    double max_x() const { return x_.back(); }
    size_t knot_count() const { return x_.size(); }

    double eval(double x) const {
        if (x_.size() == 1) return y_[0];
        if (x <= x_.front()) return y_.front() + deriv_at_knot(0) * (x - x_.front());
        if (x >= x_.back())
            return y_.back() + deriv_at_knot(x_.size() - 1) * (x - x_.back());
        size_t i = segment(x);
        double h = x_[i + 1] - x_[i];
        double t0 = (x_[i + 1] - x) / h;
        double t1 = (x - x_[i]) / h;
        return t0 * y_[i] + t1 * y_[i + 1] +
               ((t0 * t0 * t0 - t0) * m_[i] + (t1 * t1 * t1 - t1) * m_[i + 1]) * h * h / 6.0;
    }

    double deriv(double x) const {
        if (x_.size() == 1) return 0.0;
        if (x <= x_.front()) return deriv_at_knot(0);
        if (x >= x_.back()) return deriv_at_knot(x_.size() - 1);
        size_t i = segment(x);
        double h = x_[i + 1] - x_[i];
        double t0 = (x_[i + 1] - x) / h;
        double t1 = (x - x_[i]) / h;
        return (y_[i + 1] - y_[i]) / h +
               ((3.0 * t1 * t1 - 1.0) * m_[i + 1] - (3.0 * t0 * t0 - 1.0) * m_[i]) * h / 6.0;
    }

private:
    size_t segment(double x) const {
        size_t lo = 0, hi = x_.size() - 1;
        while (hi - lo > 1) {
            size_t mid = (lo + hi) / 2;
            (x_[mid] <= x ? lo : hi) = mid;
        }
        return lo;
    }

    double deriv_at_knot(size_t i) const {
        if (x_.size() < 2) return 0.0;
        if (i + 1 < x_.size()) {
            double h = x_[i + 1] - x_[i];
            return (y_[i + 1] - y_[i]) / h - (2.0 * m_[i] + m_[i + 1]) * h / 6.0;
        }
        double h = x_[i] - x_[i - 1];
        return (y_[i] - y_[i - 1]) / h + (m_[i - 1] + 2.0 * m_[i]) * h / 6.0;
    }

    std::vector<double> x_, y_, m_;
};

// Discrete smoothing spline (Whittaker-Henderson): minimizes
//   sum (z_i - y_i)^2 + lambda * sum (z_{i-1} - 2 z_i + z_{i+1})^2
// over uniformly spaced samples. Constant and linear inputs pass through
// unchanged (the penalty annihilates them).
inline std::vector<double> whittaker_smooth(const std::vector<double>& y, double lambda) {
    size_t n = y.size();
    if (n < 3 || lambda <= 0.0) return y;
    // Symmetric pentadiagonal A = I + lambda * D2' D2, stored as three bands.
    std::vector<double> d0(n), d1(n - 1, 0.0), d2(n - 2, 0.0);
    for (size_t i = 0; i < n; ++i) {
        double diag = 1.0;
        // row counts of D2'D2 main diagonal: 1,5,6,...,6,5,1 pattern
        if (n >= 3) {
            double c = 6.0;
            if (i == 0 || i == n - 1) c = 1.0;
            else if (i == 1 || i == n - 2) c = 5.0;
            if (n == 3 && i == 1) c = 4.0;
            if (n == 4 && (i == 1 || i == 2)) c = 5.0;
            diag += lambda * c;
        }
        d0[i] = diag;
    }
    for (size_t i = 0; i + 1 < n; ++i) {
        double c = -4.0;
        if (i == 0 || i + 1 == n - 1) c = -2.0;
        if (n == 3) c = -2.0;  // both off-diagonals border the ends
        d1[i] = lambda * c;
    }
    for (size_t i = 0; i + 2 < n; ++i) d2[i] = lambda * 1.0;

    // Banded Cholesky (bandwidth 2): A = L D L^T.
    std::vector<double> l1(n, 0.0), l2(n, 0.0), dd(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        double v = d0[i];
        if (i >= 1) v -= l1[i - 1] * l1[i - 1] * dd[i - 1];
        if (i >= 2) v -= l2[i - 2] * l2[i - 2] * dd[i - 2];
        dd[i] = v;
        if (i + 1 < n) {
            double e = d1[i];
            if (i >= 1) e -= l1[i - 1] * l2[i - 1] * dd[i - 1];
            l1[i] = e / dd[i];
        }
        if (i + 2 < n) l2[i] = d2[i] / dd[i];
    }
    // Solve L D L^T z = y.
    std::vector<double> z(y);
    for (size_t i = 0; i < n; ++i) {
        if (i >= 1) z[i] -= l1[i - 1] * z[i - 1];
        if (i >= 2) z[i] -= l2[i - 2] * z[i - 2];
    }
    for (size_t i = 0; i < n; ++i) z[i] /= dd[i];
    for (size_t i = n; i-- > 0;) {
        if (i + 1 < n) z[i] -= l1[i] * z[i + 1];
        if (i + 2 < n) z[i] -= l2[i] * z[i + 2];
    }
    return z;
}

}  // namespace spinevol
