#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "argogp/types.hpp"

namespace argogp {

// Static kd-tree over an already-scaled PointSet. Stored points carry ranks
// (their index in the input set); a query may restrict matches to
// rank < rank_limit, which is how ordered conditioning sets are built from
// one tree over the whole ordered set.
//
// Distances are squared Euclidean, accumulated exactly like the batch
// kernels so that tree and brute-force searches agree bitwise. Ties break
// toward the smaller rank.
class KdTree {
 public:
  explicit KdTree(const PointSet& pts, std::size_t leaf_size = 16);

  // Collects up to k nearest ranks with rank < rank_limit, sorted ascending.
  void knn(std::span<const double> query, std::size_t k, std::uint32_t rank_limit,
           std::vector<std::uint32_t>& out) const;

  static void knn_bruteforce(const PointSet& pts, std::span<const double> query,
                             std::size_t k, std::uint32_t rank_limit,
                             std::vector<std::uint32_t>& out);

  std::size_t size() const { return pts_.n; }

 private:
  struct Node {
    double lo[7];
    double hi[7];
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::uint32_t min_rank = 0;
    std::uint8_t split_dim = 0;
  };

  struct Candidate {
    double d2;
    std::uint32_t rank;
    bool operator<(const Candidate& o) const {  // max-heap: worst on top
      return d2 < o.d2 || (d2 == o.d2 && rank < o.rank);
    }
  };

  std::int32_t build(std::uint32_t begin, std::uint32_t end, std::size_t leaf_size);
  void search(std::int32_t node, std::span<const double> query, std::size_t k,
              std::uint32_t rank_limit, std::vector<Candidate>& heap) const;
  double box_distance(const Node& nd, std::span<const double> query) const;

  PointSet pts_;                     // leaf-contiguous copy
  std::vector<std::uint32_t> rank_;  // original index per stored point
  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
};

}  // namespace argogp
