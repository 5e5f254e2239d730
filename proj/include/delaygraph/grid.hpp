#pragma once

#include <functional>
#include <vector>

namespace delaygraph {

// Uniform samples of a real function on [x0, x1], endpoints included.
struct GridFunction {
  double x0 = 0.0;
  double x1 = 1.0;
  std::vector<double> values;

  GridFunction() = default;
  GridFunction(double lo, double hi, std::vector<double> v);
  static GridFunction sample(double lo, double hi, int points, const std::function<double(double)>& f);
  static GridFunction zeros(double lo, double hi, int points);

  int size() const { return static_cast<int>(values.size()); }
  double step() const { return (x1 - x0) / (size() - 1); }
  double x(int i) const { return x0 + i * step(); }
  double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }

  // piecewise linear; clamps outside [x0, x1]
  double linear(double x) const;
  // 4-point Lagrange, stencil shifted inward near the ends
  double cubic(double x) const;
  // value halfway between nodes i and i+1 (cubic midpoint rule)
  double midpoint(int i) const;

  double integral() const;  // composite Simpson, needs odd size
  double l2_norm() const;
};

double simpson(const std::vector<double>& f, double h);

// out[i] = integral from x_i to x_{n-1} of f, sixth-order local rule; any n >= 6
std::vector<double> cumulative_from_right(const std::vector<double>& f, double h);

// relative L2 distance ||a - b|| / ||b||; falls back to absolute when b vanishes
double l2_distance(const GridFunction& a, const GridFunction& b);
double l2_relative_error(const GridFunction& approx, const GridFunction& truth);

}  // namespace delaygraph
