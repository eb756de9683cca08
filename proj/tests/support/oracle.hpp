#pragma once

// Reference computations used by the tests. Nothing here calls into the
// library: the normal tail is integrated numerically, channels are drawn with
// the standard library generators, and minima are found by brute force.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

/// Standard normal tail by composite Simpson integration of the density.
inline double normal_tail(double s) {
  if (s < 0.0) return 1.0 - normal_tail(-s);
  const double upper = s + 40.0;
  const int n = 200000;
  const double h = (upper - s) / n;
  const auto pdf = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi); };
  double acc = pdf(s) + pdf(upper);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * pdf(s + i * h);
  return acc * h / 3.0;
}

/// Bisection on normal_tail.
inline double normal_tail_inverse(double p) {
  double lo = -10.0, hi = 10.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (normal_tail(mid) > p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double tail(double s) { return 0.5 * std::erfc(s / std::sqrt(2.0)); }

/// P_f + P_m for Gaussian dT with mean 0 / variance v0 under H0 and mean mu1 / variance v1 under H1.
inline double overall_error(double eps, double mu1, double v0, double v1) {
  return tail(eps / std::sqrt(v0)) + 1.0 - tail((eps - mu1) / std::sqrt(v1));
}

/// Smallest overall error on an evenly spaced grid spanning six combined sigmas around both means.
inline double grid_min_overall_error(double mu1, double v0, double v1, int points = 10000) {
  const double spread = 6.0 * (std::sqrt(v0) + std::sqrt(v1));
  const double lo = std::min(0.0, mu1) - spread;
  const double hi = std::max(0.0, mu1) + spread;
  double best = 2.0;
  for (int i = 0; i < points; ++i) {
    best = std::min(best, overall_error(lo + (hi - lo) * i / (points - 1), mu1, v0, v1));
  }
  return best;
}

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;
  double std_error = 0.0;
};

inline SampleMoments moments(const std::vector<double>& v) {
  long double s = 0.0L;
  for (double x : v) s += x;
  const long double m = s / v.size();
  long double ss = 0.0L;
  for (double x : v) ss += (x - m) * (x - m);
  const double var = static_cast<double>(ss / (v.size() - 1));
  return {static_cast<double>(m), var, std::sqrt(var / v.size())};
}

/// Brute-force simulator built on std::mt19937_64 and std::normal_distribution.
class Simulator {
 public:
  explicit Simulator(std::uint64_t seed) : gen_(seed) {}

  std::complex<double> cn(double var) {
    const double s = std::sqrt(var / 2.0);
    return {s * normal_(gen_), s * normal_(gen_)};
  }

  /// |sum_n a_n e^{j t_n} h_rb h_ar + h_ab|^2 for one fresh draw.
  double equivalent_power(const std::vector<double>& amp, const std::vector<double>& phase, double var_ar,
                          double var_rb, double var_a) {
    std::complex<double> h = cn(var_a);
    for (std::size_t n = 0; n < amp.size(); ++n) h += std::polar(amp[n], phase[n]) * cn(var_rb) * cn(var_ar);
    return std::norm(h);
  }

  /// RSS of one per-sample-fading block with unit-power symbols; `amp` empty means direct link only.
  double rss(std::size_t l, const std::vector<double>& amp, double var_ar, double var_rb, double var_direct,
             double noise) {
    const std::vector<double> phase(amp.size(), 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < l; ++i) {
      std::complex<double> h = cn(var_direct);
      for (std::size_t n = 0; n < amp.size(); ++n) h += amp[n] * cn(var_rb) * cn(var_ar);
      acc += std::norm(h + cn(noise));  // |x| = 1 and circular symmetry make the symbol phase irrelevant
    }
    return acc / static_cast<double>(l);
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_;
};

}  // namespace oracle
