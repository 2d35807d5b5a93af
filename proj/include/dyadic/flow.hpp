#pragma once

#include <limits>
#include <queue>
#include <vector>

#include "dyadic/rational.hpp"

namespace dyadic {

/// Dinic max-flow with exact big-integer capacities.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t n) : head_(n, -1), level_(n), iter_(n) {}

  std::size_t add_edge(std::size_t from, std::size_t to, Int cap) {
    std::size_t id = edges_.size();
    edges_.push_back({to, head_[from], std::move(cap)});
    head_[from] = long(id);
    edges_.push_back({from, head_[to], Int(0)});
    head_[to] = long(id + 1);
    return id;
  }

  Int run(std::size_t s, std::size_t t) {
    Int flow = 0;
    while (bfs(s, t)) {
      iter_ = head_;
      for (;;) {
        Int f = dfs(s, t, Int(-1));
        if (f == 0) break;
        flow += f;
      }
    }
    return flow;
  }

  /// Flow pushed through a forward edge (after run).
  const Int& flow_on(std::size_t id) const { return edges_[id ^ 1].cap; }

  /// Nodes reachable from s in the residual graph (after run): the
  /// source side of a minimum cut.
  std::vector<bool> min_cut_side(std::size_t s) const {
    std::vector<bool> seen(head_.size(), false);
    std::queue<std::size_t> q;
    seen[s] = true;
    q.push(s);
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop();
      for (long e = head_[u]; e >= 0; e = edges_[std::size_t(e)].next)
        if (edges_[std::size_t(e)].cap > 0 && !seen[edges_[std::size_t(e)].to]) {
          seen[edges_[std::size_t(e)].to] = true;
          q.push(edges_[std::size_t(e)].to);
        }
    }
    return seen;
  }

 private:
  struct Edge {
    std::size_t to;
    long next;
    Int cap;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1L);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop();
      for (long e = head_[u]; e >= 0; e = edges_[std::size_t(e)].next) {
        const Edge& ed = edges_[std::size_t(e)];
        if (ed.cap > 0 && level_[ed.to] < 0) {
          level_[ed.to] = level_[u] + 1;
          q.push(ed.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  Int dfs(std::size_t u, std::size_t t, Int limit) {
    if (u == t) return limit;
    for (long& e = iter_[u]; e >= 0; e = edges_[std::size_t(e)].next) {
      Edge& ed = edges_[std::size_t(e)];
      if (ed.cap > 0 && level_[ed.to] == level_[u] + 1) {
        Int pass = (limit < 0 || ed.cap < limit) ? ed.cap : limit;
        Int f = dfs(ed.to, t, pass);
        if (f > 0) {
          ed.cap -= f;
          edges_[std::size_t(e) ^ 1].cap += f;
          return f;
        }
      }
    }
    return Int(0);
  }

  std::vector<Edge> edges_;
  std::vector<long> head_;
  std::vector<long> level_;
  std::vector<long> iter_;
};

}  // namespace dyadic
