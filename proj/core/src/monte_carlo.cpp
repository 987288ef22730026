#include "hypersparse/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hypersparse/rng.hpp"

namespace hypersparse {

namespace {

CantelliCheck make_check(double t, long hits, long trials) {
  CantelliCheck c;
  c.t = t;
  c.bound = t * t / (1.0 + t * t);
  c.frequency = static_cast<double>(hits) / static_cast<double>(trials);
  c.std_error = std::sqrt(std::max(c.frequency * (1.0 - c.frequency), 1e-12) /
                          static_cast<double>(trials));
  c.holds = c.frequency >= c.bound - 3.0 * c.std_error;
  return c;
}

}  // namespace

MonteCarloReport monte_carlo_lemmas(double delta, long n_samples, std::uint64_t seed) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");

  MonteCarloReport rep;
  rep.delta = delta;
  rep.n_samples = n_samples;
  rep.mean_abs_expected = delta * std::sqrt(2.0 / std::numbers::pi);

  const double half_normal_mean = rep.mean_abs_expected;
  const double half_normal_std = delta * std::sqrt(1.0 - 2.0 / std::numbers::pi);
  const std::vector<double> ts = {0.5, 1.0, 2.0};

  // Half-normal mean and per-sample deviation events on one stream.
  {
    Rng rng = Rng::substream(seed, 0);
    double acc = 0.0;
    std::vector<long> hits(ts.size(), 0);
    for (long s = 0; s < n_samples; ++s) {
      const double x = std::abs(delta * rng.next_gaussian());
      acc += x;
      for (std::size_t j = 0; j < ts.size(); ++j)
        if (x - half_normal_mean <= ts[j] * half_normal_std) ++hits[j];
    }
    rep.mean_abs = acc / static_cast<double>(n_samples);
    for (std::size_t j = 0; j < ts.size(); ++j)
      rep.single.push_back(make_check(ts[j], hits[j], n_samples));
  }

  // Mean-of-group events: the group mean of |x_i| deviates from its mean by
  // at most t standard errors with probability >= t^2/(1+t^2).
  {
    rep.group_size = 20;
    const long trials = std::max<long>(n_samples / rep.group_size, 1);
    Rng rng = Rng::substream(seed, 1);
    std::vector<long> hits(ts.size(), 0);
    const double group_sigma =
        half_normal_std / std::sqrt(static_cast<double>(rep.group_size));
    for (long s = 0; s < trials; ++s) {
      double m = 0.0;
      for (int i = 0; i < rep.group_size; ++i) m += std::abs(delta * rng.next_gaussian());
      m /= rep.group_size;
      for (std::size_t j = 0; j < ts.size(); ++j)
        if (m - half_normal_mean <= ts[j] * group_sigma) ++hits[j];
    }
    for (std::size_t j = 0; j < ts.size(); ++j)
      rep.group_mean.push_back(make_check(ts[j], hits[j], trials));
  }

  // Growth of max |x_i|: median over trials, per sample size.
  {
    rep.growth_n = {10, 100, 1000, 10000};
    const int trials = 51;
    Rng rng = Rng::substream(seed, 2);
    for (long nn : rep.growth_n) {
      std::vector<double> maxima(trials, 0.0);
      for (int tr = 0; tr < trials; ++tr) {
        double mx = 0.0;
        for (long i = 0; i < nn; ++i) mx = std::max(mx, std::abs(delta * rng.next_gaussian()));
        maxima[tr] = mx;
      }
      std::nth_element(maxima.begin(), maxima.begin() + trials / 2, maxima.end());
      rep.growth_median_max.push_back(maxima[trials / 2]);
    }
    rep.growth_monotone = true;
    for (std::size_t i = 1; i < rep.growth_median_max.size(); ++i)
      if (rep.growth_median_max[i] <= rep.growth_median_max[i - 1]) rep.growth_monotone = false;
  }

  return rep;
}

}  // namespace hypersparse
