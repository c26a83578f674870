#include "argogp/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "argogp/common.hpp"
#include "argogp/kernels.hpp"

namespace argogp {

namespace {

inline double point_sqdist(const std::array<const double*, 7>& ptrs, std::size_t q,
                           std::span<const double> query, std::size_t i) {
  double acc = 0.0;
  for (std::size_t k = 0; k < q; ++k) {
    double d = ptrs[k][i] - query[k];
    acc = std::fma(d, d, acc);
  }
  return acc;
}

}  // namespace

KdTree::KdTree(const PointSet& pts, std::size_t leaf_size) {
  if (pts.n == 0) throw ConfigError("KdTree requires at least one point");
  rank_.resize(pts.n);
  std::iota(rank_.begin(), rank_.end(), 0u);

  // Build over a mutable copy of the ranks, permuting them leaf-contiguously.
  pts_ = pts;  // temporary; replaced by the permuted gather below
  std::vector<std::uint32_t> order(rank_);
  struct BuildCtx {
    const PointSet* src;
    std::vector<std::uint32_t>* order;
  };

  // Recursive build over [begin, end) of `order`.
  std::vector<Node>& nodes = nodes_;
  nodes.reserve(2 * pts.n / std::max<std::size_t>(leaf_size, 1) + 2);
  const PointSet& src = pts;

  struct Builder {
    const PointSet& src;
    std::vector<std::uint32_t>& order;
    std::vector<Node>& nodes;
    std::size_t leaf_size;

    std::int32_t run(std::uint32_t begin, std::uint32_t end) {
      Node nd;
      nd.begin = begin;
      nd.end = end;
      for (std::size_t k = 0; k < src.q; ++k) {
        double lo = src.dim[k][order[begin]];
        double hi = lo;
        for (std::uint32_t i = begin + 1; i < end; ++i) {
          double v = src.dim[k][order[i]];
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        nd.lo[k] = lo;
        nd.hi[k] = hi;
      }
      nd.min_rank = *std::min_element(order.begin() + begin, order.begin() + end);
      if (end - begin <= leaf_size) {
        nodes.push_back(nd);
        return static_cast<std::int32_t>(nodes.size() - 1);
      }
      std::size_t dim = 0;
      double spread = -1.0;
      for (std::size_t k = 0; k < src.q; ++k) {
        double s = nd.hi[k] - nd.lo[k];
        if (s > spread) {
          spread = s;
          dim = k;
        }
      }
      nd.split_dim = static_cast<std::uint8_t>(dim);
      std::uint32_t mid = begin + (end - begin) / 2;
      std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                       [&](std::uint32_t a, std::uint32_t b) {
                         double va = src.dim[dim][a];
                         double vb = src.dim[dim][b];
                         return va < vb || (va == vb && a < b);
                       });
      nodes.push_back(nd);
      std::int32_t self = static_cast<std::int32_t>(nodes.size() - 1);
      std::int32_t l = run(begin, mid);
      std::int32_t r = run(mid, end);
      nodes[self].left = l;
      nodes[self].right = r;
      return self;
    }
  };

  Builder builder{src, order, nodes, std::max<std::size_t>(leaf_size, 1)};
  root_ = builder.run(0, static_cast<std::uint32_t>(pts.n));

  pts_ = src.gather(order);
  rank_ = std::move(order);
}

double KdTree::box_distance(const Node& nd, std::span<const double> query) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < pts_.q; ++k) {
    double v = query[k];
    double d = 0.0;
    if (v < nd.lo[k]) d = nd.lo[k] - v;
    else if (v > nd.hi[k]) d = v - nd.hi[k];
    acc += d * d;
  }
  return acc;
}

void KdTree::search(std::int32_t node, std::span<const double> query, std::size_t k,
                    std::uint32_t rank_limit, std::vector<Candidate>& heap) const {
  const Node& nd = nodes_[node];
  if (nd.min_rank >= rank_limit) return;
  if (heap.size() == k && box_distance(nd, query) > heap.front().d2) return;

  if (nd.left < 0) {
    auto ptrs = pts_.dim_ptrs();
    double buf[64];
    std::uint32_t count = nd.end - nd.begin;
    std::array<const double*, 7> shifted{};
    for (std::size_t d = 0; d < pts_.q; ++d) shifted[d] = ptrs[d] + nd.begin;
    kern::active().sqdist(shifted.data(), pts_.q, query.data(), count, buf);
    for (std::uint32_t i = 0; i < count; ++i) {
      std::uint32_t r = rank_[nd.begin + i];
      if (r >= rank_limit) continue;
      Candidate c{buf[i], r};
      if (heap.size() < k) {
        heap.push_back(c);
        std::push_heap(heap.begin(), heap.end());
      } else if (c < heap.front()) {
        std::pop_heap(heap.begin(), heap.end());
        heap.back() = c;
        std::push_heap(heap.begin(), heap.end());
      }
    }
    return;
  }

  // visit the child containing the query first
  std::int32_t a = nd.left;
  std::int32_t b = nd.right;
  std::size_t dim = nd.split_dim;
  double mid_hi = nodes_[a].hi[dim];
  if (query[dim] > mid_hi) std::swap(a, b);
  search(a, query, k, rank_limit, heap);
  search(b, query, k, rank_limit, heap);
}

void KdTree::knn(std::span<const double> query, std::size_t k, std::uint32_t rank_limit,
                 std::vector<std::uint32_t>& out) const {
  out.clear();
  if (k == 0) return;
  std::vector<Candidate> heap;
  heap.reserve(k + 1);
  search(root_, query, k, rank_limit, heap);
  out.reserve(heap.size());
  for (const auto& c : heap) out.push_back(c.rank);
  std::sort(out.begin(), out.end());
}

void KdTree::knn_bruteforce(const PointSet& pts, std::span<const double> query,
                            std::size_t k, std::uint32_t rank_limit,
                            std::vector<std::uint32_t>& out) {
  out.clear();
  if (k == 0) return;
  std::size_t n = std::min<std::size_t>(pts.n, rank_limit);
  if (n == 0) return;
  std::vector<double> d2(n);
  auto ptrs = pts.dim_ptrs();
  kern::active().sqdist(ptrs.data(), pts.q, query.data(), n, d2.data());
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  std::size_t keep = std::min(k, n);
  std::partial_sort(idx.begin(), idx.begin() + keep, idx.end(),
                    [&](std::uint32_t a, std::uint32_t b) {
                      return d2[a] < d2[b] || (d2[a] == d2[b] && a < b);
                    });
  idx.resize(keep);
  std::sort(idx.begin(), idx.end());
  out = std::move(idx);
}

}  // namespace argogp
