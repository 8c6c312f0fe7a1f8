#include "hk/sampling.hpp"

#include <cmath>
#include <random>

namespace hk {

namespace {

double radical_inverse(std::uint64_t i, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

}  // namespace

Coords halton_point(std::uint64_t index, int dim) {
  static const unsigned primes[] = {2, 3, 5, 7, 11};
  Coords u(dim);
  for (int k = 0; k < dim; ++k) u[k] = radical_inverse(index, primes[k]);
  return u;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  if (n == 1) return {0.5 * (lo + hi)};
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

SampleSet sample_box(ChartPtr chart, const std::vector<Range>& ranges, const SampleSpec& spec,
                     Predicate keep) {
  const int dim = chart->dim();
  if (static_cast<int>(ranges.size()) != dim) throw ParameterError("sample_box: range count differs from chart dimension");
  if (spec.lattice < 1 || spec.halton < 0) throw ParameterError("sample_box: negative sample count");
  if (spec.density <= 0) throw ParameterError("sample_box: density must be positive");
  for (const auto& [lo, hi] : ranges)
    if (!(lo <= hi)) throw ParameterError("sample_box: empty range");

  SampleSet set{chart, {}, spec.seed};
  auto accept = [&](Coords x) {
    x = chart->reduce(std::move(x));
    if (!chart->contains(x)) return;
    if (keep && !keep(x)) return;
    set.points.push_back(std::move(x));
  };

  const int per_axis =
      std::max(1, static_cast<int>(std::lround(spec.lattice * std::pow(spec.density, 1.0 / dim))));
  std::vector<std::vector<double>> axes;
  for (const auto& [lo, hi] : ranges) axes.push_back(linspace(lo, hi, per_axis));
  std::vector<int> idx(dim, 0);
  while (true) {
    Coords x(dim);
    for (int k = 0; k < dim; ++k) x[k] = axes[k][idx[k]];
    accept(std::move(x));
    int k = 0;
    while (k < dim && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == dim) break;
  }

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Coords shift(dim);
  for (double& s : shift) s = unit(rng);
  const auto count = static_cast<std::uint64_t>(std::llround(spec.halton * spec.density));
  for (std::uint64_t i = 1; i <= count; ++i) {
    Coords u = halton_point(i, dim);
    Coords x(dim);
    for (int k = 0; k < dim; ++k) {
      double v = u[k] + shift[k];
      v -= std::floor(v);
      x[k] = ranges[k].first + v * (ranges[k].second - ranges[k].first);
    }
    accept(std::move(x));
  }
  return set;
}

}  // namespace hk
