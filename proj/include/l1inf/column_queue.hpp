#pragma once

#include <cstddef>
#include <vector>

namespace l1inf {

/// Indexed binary max-heap over column indices 0..m-1. Each column appears
/// at most once; its key can be changed in place. Equal keys pop the lower
/// column index first.
class ColumnQueue {
 public:
  explicit ColumnQueue(std::size_t columns);

  /// Replaces the contents with every column, keyed by `keys`, in O(m).
  void assign(const std::vector<double>& keys);

  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }
  bool contains(std::size_t j) const noexcept { return slot_[j] != kAbsent; }

  std::size_t top() const noexcept { return heap_.front(); }
  double top_key() const noexcept { return key_[heap_.front()]; }
  double key(std::size_t j) const noexcept { return key_[j]; }

  void push(std::size_t j, double key);
  /// Inserts j or changes its key.
  void set(std::size_t j, double key);
  void erase(std::size_t j);
  void pop() { erase(top()); }

 private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

  bool before(std::size_t a, std::size_t b) const noexcept {
    return key_[a] > key_[b] || (key_[a] == key_[b] && a < b);
  }
  void place(std::size_t pos, std::size_t j) noexcept {
    heap_[pos] = j;
    slot_[j] = pos;
  }
  void sift_up(std::size_t pos) noexcept;
  void sift_down(std::size_t pos) noexcept;

  std::vector<std::size_t> heap_;
  std::vector<std::size_t> slot_;
  std::vector<double> key_;
};

}  // namespace l1inf
