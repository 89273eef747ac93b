#include "pointnls/kgrid.hpp"

#include <algorithm>
#include <cmath>

#include "pointnls/quadrature.hpp"

namespace pointnls {

std::shared_ptr<const KGrid> KGrid::make(double k_max, int panels,
                                         int nodes_per_panel,
                                         double first_panel_rel) {
  if (!(k_max > 0.0)) throw GridError("KGrid: k_max must be positive");
  if (panels < 2 || nodes_per_panel != 16)
    throw GridError("KGrid: need >= 2 panels of 16 nodes");
  if (!(first_panel_rel > 0.0 && first_panel_rel < 1.0))
    throw GridError("KGrid: first_panel_rel in (0,1)");

  auto g = std::make_shared<KGrid>(KGrid{});
  g->k_max_ = k_max;
  g->panels_ = panels;
  g->per_panel_ = nodes_per_panel;

  // edges_[i] = k_max * r^(panels - i) for i >= 1, with edges_[1] pinned to
  // k_max * first_panel_rel; edges_[0] = 0.
  const double r = std::pow(first_panel_rel, 1.0 / double(panels - 1));
  g->edges_.resize(panels + 1);
  g->edges_[0] = 0.0;
  for (int i = 1; i <= panels; ++i)
    g->edges_[i] = k_max * std::pow(r, double(panels - i));
  g->edges_[panels] = k_max;

  const auto xs = gl16_nodes();
  const auto ws = gl16_weights();
  g->nodes_.reserve(size_t(panels) * nodes_per_panel);
  g->weights_.reserve(size_t(panels) * nodes_per_panel);
  for (int p = 0; p < panels; ++p) {
    const double a = g->edges_[p], b = g->edges_[p + 1];
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int i = 0; i < nodes_per_panel; ++i) {
      g->nodes_.push_back(c + h * xs[i]);
      g->weights_.push_back(h * ws[i]);
    }
  }
  return g;
}

std::shared_ptr<const KGrid> KGrid::for_run(double eps, double sigma) {
  if (!(eps > 0.0)) throw std::invalid_argument("KGrid::for_run: eps must be > 0");
  const double k_max = std::max(40.0, 40.0 / (eps * sigma));
  return make(k_max);
}

bool KGrid::same_nodes(const KGrid& other) const {
  if (this == &other) return true;
  if (nodes_.size() != other.nodes_.size()) return false;
  for (size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i] != other.nodes_[i]) return false;
  return true;
}

}  // namespace pointnls
