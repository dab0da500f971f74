#include "chipfire/gonality.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "chipfire/bounds.hpp"
#include "chipfire/error.hpp"

namespace chipfire {

namespace {

// Depth-first generator of superstable configurations off q. Superstable
// configurations are closed downward, so once a prefix (with the unassigned
// nodes at zero) fails the burning test every larger value fails too.
class CandidateWalker {
 public:
  CandidateWalker(const MultiGraph& g, NodeId q, Count d) : g_(g), q_(q), d_(d), chips_(g.node_count(), 0) {
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (v != q) others_.push_back(v);
    }
  }

  const std::vector<NodeId>& others() const { return others_; }

  // Largest admissible value for the first off-q node (exclusive bound).
  Count first_limit() const {
    if (others_.empty()) return 0;
    return std::min(d_ - 1, g_.degree(others_[0]) - 1) + 1;
  }

  // Walks everything. Returns false if stopped.
  template <typename Visit>
  bool walk_all(Visit&& visit) {
    return descend(0, d_ - 1, visit);
  }

  // Walks the subtree whose first off-q node holds `first` chips.
  template <typename Visit>
  bool walk_with_first(Count first, Visit&& visit) {
    std::fill(chips_.begin(), chips_.end(), 0);
    chips_[others_[0]] = first;
    if (first > 0 && !superstable()) return true;
    const bool finished = descend(1, d_ - 1 - first, visit);
    chips_[others_[0]] = 0;
    return finished;
  }

 private:
  bool superstable() {
    burnt_.assign(g_.node_count(), 0);
    pressure_.assign(g_.node_count(), 0);
    stack_.clear();
    burnt_[q_] = 1;
    stack_.push_back(q_);
    std::size_t count = 1;
    while (!stack_.empty()) {
      const NodeId u = stack_.back();
      stack_.pop_back();
      for (const auto& nb : g_.neighbors(u)) {
        if (burnt_[nb.node]) continue;
        pressure_[nb.node] += nb.multiplicity;
        if (pressure_[nb.node] > chips_[nb.node]) {
          burnt_[nb.node] = 1;
          ++count;
          stack_.push_back(nb.node);
        }
      }
    }
    return count == g_.node_count();
  }

  template <typename Visit>
  bool descend(std::size_t index, Count budget, Visit& visit) {
    if (index == others_.size()) {
      Divisor candidate(chips_);
      candidate[q_] = budget + 1;
      return visit(candidate);
    }
    const NodeId v = others_[index];
    const Count limit = std::min(budget, g_.degree(v) - 1);
    for (Count c = 0; c <= limit; ++c) {
      chips_[v] = c;
      if (c > 0 && !superstable()) break;
      if (!descend(index + 1, budget - c, visit)) {
        chips_[v] = 0;
        return false;
      }
    }
    chips_[v] = 0;
    return true;
  }

  const MultiGraph& g_;
  NodeId q_;
  Count d_;
  std::vector<NodeId> others_;
  std::vector<Count> chips_;
  std::vector<char> burnt_;
  std::vector<Count> pressure_;
  std::vector<NodeId> stack_;
};

void check_search_input(const MultiGraph& g, NodeId q) {
  if (g.node_count() == 0) throw Error(ErrorKind::InvalidArgument, "graph has no nodes");
  if (q >= g.node_count()) throw Error(ErrorKind::UnknownNode, "base point out of range");
  if (!g.is_connected()) throw Error(ErrorKind::Disconnected, "gonality needs a connected graph");
}

}  // namespace

void for_each_reduced_candidate(const MultiGraph& g, NodeId q, Count d,
                                const std::function<bool(const Divisor&)>& visit) {
  if (q >= g.node_count()) throw Error(ErrorKind::UnknownNode, "base point out of range");
  if (d < 1) return;
  CandidateWalker walker(g, q, d);
  walker.walk_all([&](const Divisor& c) { return visit(c); });
}

std::vector<Divisor> enumerate_reduced_candidates(const MultiGraph& g, NodeId q, Count d) {
  std::vector<Divisor> out;
  for_each_reduced_candidate(g, q, d, [&](const Divisor& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

DegreeSearch search_degree(const MultiGraph& g, NodeId q, Count d, std::size_t workers) {
  if (q >= g.node_count()) throw Error(ErrorKind::UnknownNode, "base point out of range");
  DegreeSearch result;
  if (d < 1) return result;

  CandidateWalker probe(g, q, d);
  if (probe.others().empty()) {
    Divisor only(g.node_count());
    only[q] = d;
    result.candidates_examined = 1;
    if (positive_rank(g, only)) result.witness = only;
    return result;
  }

  // One task per chip count on the first off-q node. Tasks run in order of
  // index; a task is abandoned once a smaller index has produced a witness.
  struct TaskResult {
    std::size_t examined = 0;
    std::optional<Divisor> witness;
  };
  const auto task_count = static_cast<std::size_t>(std::max<Count>(probe.first_limit(), 0));
  std::vector<TaskResult> tasks(task_count);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto run = [&] {
    CandidateWalker walker(g, q, d);
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= task_count) return;
      if (t > best.load()) continue;
      try {
        auto& task = tasks[t];
        walker.walk_with_first(static_cast<Count>(t), [&](const Divisor& candidate) {
          if (t > best.load()) return false;
          ++task.examined;
          if (!positive_rank(g, candidate)) return true;
          task.witness = candidate;
          std::size_t seen = best.load();
          while (t < seen && !best.compare_exchange_weak(seen, t)) {
          }
          return false;
        });
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        best.store(0);
      }
    }
  };

  const std::size_t pool = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(task_count, 1));
  if (pool == 1) {
    run();
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(pool);
    for (std::size_t i = 0; i < pool; ++i) threads.emplace_back(run);
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t t = 0; t < task_count; ++t) {
    result.candidates_examined += tasks[t].examined;
    if (tasks[t].witness) {
      result.witness = tasks[t].witness;
      break;
    }
  }
  return result;
}

GonalityResult gonality(const MultiGraph& g, const SearchConfig& cfg) {
  check_search_input(g, cfg.base_point);
  const Count cap = cfg.max_degree.value_or(static_cast<Count>(g.node_count()));

  Count start = 1;
  if (cfg.spectral_pruning) {
    const double bound = spectral_lower_bound(g);
    start = std::max<Count>(1, static_cast<Count>(std::ceil(bound - 1e-9)));
  }

  GonalityResult result;
  for (Count d = start; d <= cap; ++d) {
    result.degree_schedule.push_back(d);
    auto found = search_degree(g, cfg.base_point, d, cfg.worker_count);
    result.candidates_examined += found.candidates_examined;
    if (found.witness) {
      result.gonality = d;
      result.witness = std::move(*found.witness);
      return result;
    }
  }
  throw Error(ErrorKind::SearchCapped, "no positive-rank divisor of degree <= " + std::to_string(cap));
}

}  // namespace chipfire
