#pragma once

#include <vector>

#include "pointnls/types.hpp"

namespace pointnls {

// Uniform time grid on [0, T]: nodes t_j = j * dt, j = 0..steps.
struct TimeGrid {
  double horizon = 1.0;
  int steps = 2;

  TimeGrid() = default;
  TimeGrid(double T, int N) : horizon(T), steps(N) {
    if (!(T > 0.0) || N < 2)
      throw std::invalid_argument("TimeGrid: need T > 0 and N >= 2");
  }
  double dt() const { return horizon / steps; }
  double node(int j) const { return horizon * j / steps; }
  int n_nodes() const { return steps + 1; }
  bool operator==(const TimeGrid& o) const {
    return horizon == o.horizon && steps == o.steps;
  }
};

struct TimeSeries {
  TimeGrid grid;
  std::vector<cplx> v;

  TimeSeries() = default;
  explicit TimeSeries(const TimeGrid& g) : grid(g), v(g.n_nodes(), cplx{}) {}
  TimeSeries(const TimeGrid& g, std::vector<cplx> values)
      : grid(g), v(std::move(values)) {
    if (v.size() != size_t(g.n_nodes()))
      throw std::invalid_argument("TimeSeries: length must be steps + 1");
  }
};

inline double max_abs(const TimeSeries& f) {
  double m = 0.0;
  for (const cplx& z : f.v) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace pointnls
