#include "nlslab/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nls {

namespace {

// Fritsch-Carlson node slopes for shape-preserving cubic Hermite data.
std::vector<double> fc_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    std::vector<double> h(n - 1), d(n - 1), m(n);
    for (int i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        d[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
        m[0] = m[1] = d[0];
        return m;
    }
    for (int i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    // One-sided endpoint slopes with the usual limiter.
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double m0 = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (m0 * d0 <= 0.0)
            m0 = 0.0;
        else if (d0 * d1 < 0.0 && std::abs(m0) > 3.0 * std::abs(d0))
            m0 = 3.0 * d0;
        return m0;
    };
    m[0] = endpoint(h[0], h[1], d[0], d[1]);
    m[n - 1] = endpoint(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    return m;
}

} // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size() || x_.size() < 2)
        throw std::invalid_argument("interpolant needs >= 2 knots");
    for (std::size_t i = 0; i + 1 < x_.size(); ++i)
        if (!(x_[i] < x_[i + 1]))
            throw std::invalid_argument("interpolation knots must be strictly increasing");
    m_ = fc_slopes(x_, y_);
}

double MonotoneCubic::operator()(double q) const {
    if (q > x_.back()) return 0.0;
    int i;
    if (q <= x_.front()) {
        i = 0;
    } else {
        i = static_cast<int>(std::upper_bound(x_.begin(), x_.end(), q) - x_.begin()) - 1;
        i = std::min(i, static_cast<int>(x_.size()) - 2);
    }
    const double h = x_[i + 1] - x_[i];
    const double s = (q - x_[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    return h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
}

MonotoneCubic radial_interpolant(const RadialGrid& grid, std::span<const double> values) {
    const int n = grid.cells;
    std::vector<double> x(n + 1), y(n + 1);
    // Even extension: parabola with zero slope at the origin through the
    // first two nodes gives the r = 0 value.
    const double r0 = grid.nodes[0], r1 = grid.nodes[1];
    const double c = (values[1] - values[0]) / (r1 * r1 - r0 * r0);
    x[0] = 0.0;
    y[0] = values[0] - c * r0 * r0;
    for (int j = 0; j < n; ++j) {
        x[j + 1] = grid.nodes[j];
        y[j + 1] = values[j];
    }
    return MonotoneCubic(std::move(x), std::move(y));
}

} // namespace nls
