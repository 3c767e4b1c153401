#include "geodecay/common.hpp"

#include <cmath>

namespace geodecay {

double unit_ball_volume(int n) {
  if (n < 1) throw std::invalid_argument("unit_ball_volume: n must be >= 1");
  return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double unit_sphere_area(int n) { return n * unit_ball_volume(n); }

std::vector<double> geometric_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2)
    throw std::invalid_argument("geometric_grid: need 0 < lo < hi and count >= 2");
  std::vector<double> g(count);
  const double ratio = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) g[i] = lo * std::exp(ratio * i);
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, int count) {
  if (count < 2) throw std::invalid_argument("linear_grid: count >= 2");
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = lo + (hi - lo) * i / (count - 1);
  g.back() = hi;
  return g;
}

}  // namespace geodecay
