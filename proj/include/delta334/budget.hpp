#pragma once

#include <chrono>
#include <cstdint>
#include <limits>

namespace delta334 {

// Search limits shared by the exact solvers. Zero means "unlimited".
struct Budget {
  std::uint64_t node_limit = 0;
  double seconds = 0.0;

  static Budget unlimited() { return {}; }
  static Budget nodes(std::uint64_t n) { return {n, 0.0}; }
  static Budget time(double s) { return {0, s}; }
};

// Counts search nodes against a Budget. Clock reads are amortized.
class BudgetMeter {
 public:
  explicit BudgetMeter(const Budget& b)
      : node_limit_(b.node_limit == 0 ? std::numeric_limits<std::uint64_t>::max() : b.node_limit),
        timed_(b.seconds > 0.0),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(b.seconds))) {}

  // Returns false once the budget is spent; stays false afterwards.
  bool tick() {
    if (exhausted_) return false;
    if (++nodes_ > node_limit_) return stop();
    if (timed_ && (nodes_ & 0x3ff) == 0 && std::chrono::steady_clock::now() > deadline_) return stop();
    return true;
  }

  bool exhausted() const { return exhausted_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  bool stop() {
    exhausted_ = true;
    return false;
  }

  std::uint64_t node_limit_;
  bool timed_;
  std::chrono::steady_clock::time_point deadline_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace delta334
