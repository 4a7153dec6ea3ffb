#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cosp/graph.hpp"

namespace cosp {

// Stack [I, Â, Â², ..., Â^(K-1)] of random-walk powers, Â = D^-1 A.
class RrwpEncoding {
 public:
  RrwpEncoding() = default;
  RrwpEncoding(int num_nodes, int order, std::vector<double> values)
      : num_nodes_(num_nodes), order_(order), values_(std::move(values)) {}

  int num_nodes() const { return num_nodes_; }
  int order() const { return order_; }
  // Length-K vector for (u, v).
  std::span<const double> at(Node u, Node v) const {
    return {values_.data() + (static_cast<std::size_t>(u) * num_nodes_ + v) * order_,
            static_cast<std::size_t>(order_)};
  }

 private:
  int num_nodes_ = 0;
  int order_ = 0;
  std::vector<double> values_;
};

RrwpEncoding compute_rrwp(const Graph& g, int order);

enum class PairCategory : std::uint8_t { kSelf, kAdjacent, kConnected, kDisconnected };

inline constexpr std::int32_t kNoLabel = -1;

// h0(u,v) = (x(u), x(v), e(u,v), p(u,v)).
struct PairFeature {
  std::int32_t node_u = kNoLabel;
  std::int32_t node_v = kNoLabel;
  // Edge label + 1 when labels are given, else a 0/1 edge indicator.
  std::int32_t edge = 0;
  PairCategory category = PairCategory::kSelf;
  // Continuous structural encoding; empty unless an RRWP encoding was
  // supplied.
  std::vector<double> rrwp;
};

class PairFeatures {
 public:
  PairFeatures(int num_nodes, std::vector<PairFeature> data)
      : num_nodes_(num_nodes), data_(std::move(data)) {}

  int num_nodes() const { return num_nodes_; }
  const PairFeature& at(Node u, Node v) const {
    return data_[static_cast<std::size_t>(u) * num_nodes_ + v];
  }
  bool has_continuous() const;

 private:
  int num_nodes_;
  std::vector<PairFeature> data_;
};

// Features for all n^2 ordered pairs. Throws std::invalid_argument when
// labels or the encoding do not belong to g.
PairFeatures initial_pair_features(const Graph& g, const Labels& labels = {},
                                   const RrwpEncoding* encoding = nullptr);

}  // namespace cosp
