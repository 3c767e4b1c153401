#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace geodecay {

/// Thrown when an adaptive routine cannot reach the requested accuracy
/// (quadrature refinement exhausted, ODE step size underflow, ...).
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Volume of the unit ball and area of the unit sphere in R^n.
double unit_ball_volume(int n);
double unit_sphere_area(int n);

// Grids with both endpoints included. geometric_grid requires lo > 0.
std::vector<double> geometric_grid(double lo, double hi, int count);
std::vector<double> linear_grid(double lo, double hi, int count);

// splitmix64-based generator. Unlike the std distributions, the mapping to
// doubles is pinned here, so a seed reproduces the same stream everywhere.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inclusive bounds.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

}  // namespace geodecay
