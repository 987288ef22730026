#ifndef HYPERSPARSE_MONTE_CARLO_HPP
#define HYPERSPARSE_MONTE_CARLO_HPP

#include <cstdint>
#include <vector>

namespace hypersparse {

struct CantelliCheck {
  double t = 0.0;
  double bound = 0.0;      // t^2 / (1 + t^2)
  double frequency = 0.0;  // empirical event frequency
  double std_error = 0.0;  // binomial standard error of the frequency
  bool holds = false;      // frequency >= bound - 3 * std_error
};

// Numerical checks of the noise-analysis ingredients: the half-normal mean,
// the one-sided Chebyshev (Cantelli) deviation bounds for single deviations
// and for group means, and the unbounded growth of max |x_i| with n.
struct MonteCarloReport {
  double delta = 0.0;
  long n_samples = 0;
  double mean_abs = 0.0;           // empirical E |N(0, delta^2)|
  double mean_abs_expected = 0.0;  // delta * sqrt(2/pi)
  std::vector<CantelliCheck> single;      // per-sample deviation events
  std::vector<CantelliCheck> group_mean;  // mean-of-group deviation events
  int group_size = 0;
  std::vector<long> growth_n;
  std::vector<double> growth_median_max;  // median over trials of max_i |x_i|
  bool growth_monotone = false;
};

MonteCarloReport monte_carlo_lemmas(double delta, long n_samples, std::uint64_t seed);

}  // namespace hypersparse

#endif  // HYPERSPARSE_MONTE_CARLO_HPP
