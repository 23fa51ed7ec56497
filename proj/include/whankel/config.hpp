#pragma once

namespace whankel {

enum class NodeSplit { BesselNodes, Dyadic };

struct QuadratureConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  long max_panels = 100000;
  NodeSplit node_split = NodeSplit::BesselNodes;

  // Throws InvalidArgument unless tolerances are positive and max_panels ≥ 1.
  void validate() const;
};

}  // namespace whankel
