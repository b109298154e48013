#include "rsym/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rsym {

CubicHermiteSpline::CubicHermiteSpline(std::vector<double> x, std::vector<double> y,
                                       std::vector<double> slope)
    : x_(std::move(x)), y_(std::move(y)), m_(std::move(slope)) {
  if (x_.size() < 2 || x_.size() != y_.size() || x_.size() != m_.size())
    throw std::invalid_argument("spline: need >= 2 nodes and matching arrays");
  for (std::size_t i = 0; i + 1 < x_.size(); ++i)
    if (!(x_[i] < x_[i + 1]))
      throw std::invalid_argument("spline: nodes must be strictly increasing");
}

std::size_t CubicHermiteSpline::interval(double t) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), t);
  if (it == x_.begin()) return 0;
  std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  if (i + 1 >= x_.size()) i = x_.size() - 2;
  return i;
}

double CubicHermiteSpline::value(double t) const {
  if (t <= x_.front()) return y_.front() + (t - x_.front()) * m_.front();
  if (t >= x_.back()) return y_.back() + (t - x_.back()) * m_.back();
  const std::size_t i = interval(t);
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  return h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
}

double CubicHermiteSpline::derivative(double t) const {
  if (t <= x_.front()) return m_.front();
  if (t >= x_.back()) return m_.back();
  const std::size_t i = interval(t);
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  const double s2 = s * s;
  const double d00 = (6 * s2 - 6 * s) / h;
  const double d10 = 3 * s2 - 4 * s + 1;
  const double d01 = (-6 * s2 + 6 * s) / h;
  const double d11 = 3 * s2 - 2 * s;
  return d00 * y_[i] + d10 * m_[i] + d01 * y_[i + 1] + d11 * m_[i + 1];
}

std::vector<double> monotone_slopes(const std::vector<double>& x,
                                    const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n)
    throw std::invalid_argument("monotone_slopes: bad sizes");
  std::vector<double> d(n - 1), m(n);
  for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  m[0] = d[0];
  m[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0.0)
      m[i] = 0.0;
    else
      m[i] = 0.5 * (d[i - 1] + d[i]);
  }
  // Fritsch-Carlson limiter keeps each interval monotone.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (d[i] == 0.0) {
      m[i] = 0.0;
      m[i + 1] = 0.0;
      continue;
    }
    const double a = m[i] / d[i];
    const double b = m[i + 1] / d[i];
    const double r = a * a + b * b;
    if (r > 9.0) {
      const double tau = 3.0 / std::sqrt(r);
      m[i] = tau * a * d[i];
      m[i + 1] = tau * b * d[i];
    }
  }
  return m;
}

}  // namespace rsym
