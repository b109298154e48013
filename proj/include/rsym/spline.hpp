#pragma once

#include <cstddef>
#include <vector>

namespace rsym {

// Piecewise-cubic Hermite interpolant. Nodes strictly increasing; one slope
// per node. Evaluation outside [x.front(), x.back()] clamps to the end values.
class CubicHermiteSpline {
 public:
  CubicHermiteSpline() = default;
  CubicHermiteSpline(std::vector<double> x, std::vector<double> y,
                     std::vector<double> slope);

  double value(double t) const;
  double derivative(double t) const;

  std::size_t size() const { return x_.size(); }
  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& values() const { return y_; }
  const std::vector<double>& slopes() const { return m_; }
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

 private:
  std::size_t interval(double t) const;

  std::vector<double> x_, y_, m_;
};

// Fritsch-Carlson monotonicity-preserving slopes for the data (x, y).
// Produces a C^1 interpolant bounded by the local data range.
std::vector<double> monotone_slopes(const std::vector<double>& x,
                                    const std::vector<double>& y);

}  // namespace rsym
