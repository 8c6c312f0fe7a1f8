// Deterministic sample sets: a regular lattice plus a rotated Halton set.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hk/geom.hpp"

namespace hk {

using Range = std::pair<double, double>;

struct SampleSpec {
  int lattice = 4;    // points per axis
  int halton = 200;   // low-discrepancy points
  std::uint64_t seed = 20240611;
  /// Multiplies both counts (lattice by its dim-th root).
  double density = 1.0;
};

struct SampleSet {
  ChartPtr chart;
  std::vector<Coords> points;
  std::uint64_t seed = 0;

  std::size_t size() const { return points.size(); }
};

/// Samples in the box `ranges`, keeping points inside the chart domain and
/// satisfying `keep`. Periodic entries are reduced.
SampleSet sample_box(ChartPtr chart, const std::vector<Range>& ranges, const SampleSpec& spec,
                     Predicate keep = {});

/// Samples on [lo, hi] (one dimension, lattice only, endpoints included).
std::vector<double> linspace(double lo, double hi, int n);

/// i-th point of the Halton sequence in `dim` dimensions (bases 2,3,5,7).
Coords halton_point(std::uint64_t index, int dim);

}  // namespace hk
