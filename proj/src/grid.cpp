#include "delaygraph/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace delaygraph {

GridFunction::GridFunction(double lo, double hi, std::vector<double> v)
    : x0(lo), x1(hi), values(std::move(v)) {
  if (values.size() < 2) throw std::invalid_argument("grid: need at least 2 samples");
  if (!(hi > lo)) throw std::invalid_argument("grid: empty interval");
}

GridFunction GridFunction::sample(double lo, double hi, int points,
                                  const std::function<double(double)>& f) {
  std::vector<double> v(static_cast<std::size_t>(points));
  const double h = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) v[i] = f(i == points - 1 ? hi : lo + i * h);
  return GridFunction(lo, hi, std::move(v));
}

GridFunction GridFunction::zeros(double lo, double hi, int points) {
  return GridFunction(lo, hi, std::vector<double>(static_cast<std::size_t>(points), 0.0));
}

double GridFunction::linear(double x) const {
  const int n = size();
  const double t = std::clamp((x - x0) / step(), 0.0, static_cast<double>(n - 1));
  const int i = std::min(static_cast<int>(t), n - 2);
  const double w = t - i;
  return (1.0 - w) * values[i] + w * values[i + 1];
}

namespace {

// Lagrange value at fractional position t over nodes s..s+k-1
double lagrange(const std::vector<double>& v, int s, int k, double t) {
  double sum = 0.0;
  for (int a = 0; a < k; ++a) {
    double w = 1.0;
    for (int b = 0; b < k; ++b)
      if (b != a) w *= (t - (s + b)) / static_cast<double>(a - b);
    sum += w * v[s + a];
  }
  return sum;
}

}  // namespace

double GridFunction::cubic(double x) const {
  const int n = size();
  if (n < 4) return linear(x);
  const double t = std::clamp((x - x0) / step(), 0.0, static_cast<double>(n - 1));
  const int i = std::min(static_cast<int>(t), n - 2);
  const int s = std::clamp(i - 1, 0, n - 4);
  return lagrange(values, s, 4, t);
}

double GridFunction::midpoint(int i) const {
  const int n = size();
  if (i >= 1 && i + 2 < n)
    return (-values[i - 1] + 9.0 * values[i] + 9.0 * values[i + 1] - values[i + 2]) / 16.0;
  return cubic(x0 + (i + 0.5) * step());
}

double simpson(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("simpson: need an odd number >= 3 of samples");
  double s = f[0] + f[n - 1];
  for (std::size_t i = 1; i + 1 < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f[i];
  return s * h / 3.0;
}

double GridFunction::integral() const { return simpson(values, step()); }

double GridFunction::l2_norm() const {
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) sq[i] = values[i] * values[i];
  if (sq.size() % 2 == 1) return std::sqrt(std::max(0.0, simpson(sq, step())));
  double t = 0.5 * (sq.front() + sq.back());
  for (std::size_t i = 1; i + 1 < sq.size(); ++i) t += sq[i];
  return std::sqrt(t * step());
}

namespace {

// weights w[a] with integral over [o, o+1] of the interpolant through nodes 0..5
// equal to sum w[a] f[a]; o is the offset of the interval inside the stencil
std::array<double, 6> interval_weights(int o) {
  std::array<double, 6> w{};
  for (int a = 0; a < 6; ++a) {
    // coefficients of prod_{b != a} (t - b) / (a - b)
    std::array<double, 6> c{};
    c[0] = 1.0;
    int deg = 0;
    double denom = 1.0;
    for (int b = 0; b < 6; ++b) {
      if (b == a) continue;
      for (int k = deg + 1; k >= 1; --k) c[k] = c[k - 1] - b * c[k];
      c[0] = -b * c[0];
      ++deg;
      denom *= (a - b);
    }
    double integral = 0.0;
    for (int k = 0; k <= deg; ++k)
      integral += c[k] * (std::pow(o + 1.0, k + 1) - std::pow(static_cast<double>(o), k + 1)) / (k + 1);
    w[a] = integral / denom;
  }
  return w;
}

}  // namespace

std::vector<double> cumulative_from_right(const std::vector<double>& f, double h) {
  const int n = static_cast<int>(f.size());
  if (n < 6) throw std::invalid_argument("cumulative_from_right: need at least 6 samples");
  static const std::array<std::array<double, 6>, 5> W = {interval_weights(0), interval_weights(1),
                                                         interval_weights(2), interval_weights(3),
                                                         interval_weights(4)};
  std::vector<double> out(f.size(), 0.0);
  for (int i = n - 2; i >= 0; --i) {
    const int s = std::clamp(i - 2, 0, n - 6);
    const auto& w = W[i - s];
    double piece = 0.0;
    for (int a = 0; a < 6; ++a) piece += w[a] * f[s + a];
    out[i] = out[i + 1] + h * piece;
  }
  return out;
}

double l2_distance(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size()) throw std::invalid_argument("l2_distance: grid mismatch");
  std::vector<double> d(a.values.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.values[i] - b.values[i];
  return GridFunction(a.x0, a.x1, std::move(d)).l2_norm();
}

double l2_relative_error(const GridFunction& approx, const GridFunction& truth) {
  const double d = l2_distance(approx, truth);
  const double n = truth.l2_norm();
  return n > 0.0 ? d / n : d;
}

}  // namespace delaygraph
