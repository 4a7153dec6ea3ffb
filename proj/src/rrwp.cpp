#include "cosp/rrwp.hpp"

#include <algorithm>
#include <stdexcept>

#include "cosp/connectivity.hpp"

namespace cosp {

RrwpEncoding compute_rrwp(const Graph& g, int order) {
  if (order < 1) throw std::invalid_argument("RRWP order must be at least 1");
  const int n = g.num_nodes();
  const Eigen::MatrixXd walk = random_walk_matrix(g);
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
  std::vector<double> values(static_cast<std::size_t>(n) * n * order);
  std::vector<double> terms;
  for (int k = 0; k < order; ++k) {
    if (k > 0) {
      // (P Â)[u,v] only has terms for w adjacent to v. Summing them in sorted
      // order makes the result independent of node numbering, so relabeling
      // permutes the encoding bit for bit.
      Eigen::MatrixXd next(n, n);
      for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
          terms.clear();
          for (Node w : g.neighbors(v)) terms.push_back(power(u, w) * walk(w, v));
          std::sort(terms.begin(), terms.end());
          double sum = 0.0;
          for (double x : terms) sum += x;
          next(u, v) = sum;
        }
      }
      power = std::move(next);
    }
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        values[(static_cast<std::size_t>(u) * n + v) * order + k] = power(u, v);
      }
    }
  }
  return RrwpEncoding(n, order, std::move(values));
}

bool PairFeatures::has_continuous() const {
  for (const auto& f : data_) {
    if (!f.rrwp.empty()) return true;
  }
  return false;
}

PairFeatures initial_pair_features(const Graph& g, const Labels& labels,
                                   const RrwpEncoding* encoding) {
  const int n = g.num_nodes();
  if (!labels.node.empty() && static_cast<int>(labels.node.size()) != n) {
    throw std::invalid_argument("node label count does not match graph");
  }
  for (const auto& [edge, label] : labels.edge) {
    if (edge.u >= n || edge.v >= n || !g.has_edge(edge.u, edge.v)) {
      throw std::invalid_argument("edge label on a non-edge");
    }
  }
  if (encoding != nullptr && encoding->num_nodes() != n) {
    throw std::invalid_argument("RRWP encoding was computed for a different graph");
  }
  const auto comps = connected_components(g);
  std::vector<PairFeature> data(static_cast<std::size_t>(n) * n);
  for (Node u = 0; u < n; ++u) {
    for (Node v = 0; v < n; ++v) {
      PairFeature& f = data[static_cast<std::size_t>(u) * n + v];
      if (!labels.node.empty()) {
        f.node_u = labels.node[u];
        f.node_v = labels.node[v];
      }
      const bool adjacent = u != v && g.has_edge(u, v);
      if (adjacent) {
        auto it = labels.edge.find(Edge{std::min(u, v), std::max(u, v)});
        f.edge = it != labels.edge.end() ? it->second + 1 : 1;
      }
      if (u == v) {
        f.category = PairCategory::kSelf;
      } else if (adjacent) {
        f.category = PairCategory::kAdjacent;
      } else if (comps.component_of[u] == comps.component_of[v]) {
        f.category = PairCategory::kConnected;
      } else {
        f.category = PairCategory::kDisconnected;
      }
      if (encoding != nullptr) {
        auto p = encoding->at(u, v);
        f.rrwp.assign(p.begin(), p.end());
      }
    }
  }
  return PairFeatures(n, std::move(data));
}

}  // namespace cosp
