#pragma once

#include <memory>
#include <span>
#include <vector>

#include "pointnls/types.hpp"

namespace pointnls {

// Geometrically graded Gauss-Legendre panels covering (0, k_max]. The first
// panel touches 0; nodes are strictly interior, weights positive.
class KGrid {
 public:
  static std::shared_ptr<const KGrid> make(double k_max, int panels = 64,
                                           int nodes_per_panel = 16,
                                           double first_panel_rel = 1e-4);

  // Default grid for a run at regularization eps and form-factor width sigma:
  // k_max = max(40, 40 / (eps * sigma)).
  static std::shared_ptr<const KGrid> for_run(double eps, double sigma);

  double k_max() const { return k_max_; }
  int panels() const { return panels_; }
  int nodes_per_panel() const { return per_panel_; }
  int n_nodes() const { return int(nodes_.size()); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> edges() const { return edges_; }

  bool same_nodes(const KGrid& other) const;

 private:
  double k_max_ = 0.0;
  int panels_ = 0;
  int per_panel_ = 0;
  std::vector<double> edges_;    // panels_+1 entries, edges_[0] = 0
  std::vector<double> nodes_;    // flattened, strictly increasing
  std::vector<double> weights_;
};

}  // namespace pointnls
