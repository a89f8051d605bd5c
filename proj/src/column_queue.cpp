#include "l1inf/column_queue.hpp"

#include <cassert>

namespace l1inf {

ColumnQueue::ColumnQueue(std::size_t columns) : slot_(columns, kAbsent), key_(columns, 0.0) {
  heap_.reserve(columns);
}

void ColumnQueue::assign(const std::vector<double>& keys) {
  assert(keys.size() == key_.size());
  key_ = keys;
  heap_.resize(keys.size());
  for (std::size_t j = 0; j < keys.size(); ++j) place(j, j);
  for (std::size_t pos = heap_.size() / 2; pos-- > 0;) sift_down(pos);
}

void ColumnQueue::push(std::size_t j, double key) {
  assert(!contains(j));
  key_[j] = key;
  heap_.push_back(j);
  slot_[j] = heap_.size() - 1;
  sift_up(heap_.size() - 1);
}

void ColumnQueue::set(std::size_t j, double key) {
  if (!contains(j)) {
    push(j, key);
    return;
  }
  const double old = key_[j];
  key_[j] = key;
  if (key > old) {
    sift_up(slot_[j]);
  } else {
    sift_down(slot_[j]);
  }
}

void ColumnQueue::erase(std::size_t j) {
  assert(contains(j));
  const std::size_t pos = slot_[j];
  const std::size_t last = heap_.back();
  heap_.pop_back();
  slot_[j] = kAbsent;
  if (last == j) return;
  place(pos, last);
  sift_up(pos);
  sift_down(slot_[last]);
}

void ColumnQueue::sift_up(std::size_t pos) noexcept {
  const std::size_t j = heap_[pos];
  while (pos > 0) {
    const std::size_t parent = (pos - 1) / 2;
    if (!before(j, heap_[parent])) break;
    place(pos, heap_[parent]);
    pos = parent;
  }
  place(pos, j);
}

void ColumnQueue::sift_down(std::size_t pos) noexcept {
  const std::size_t j = heap_[pos];
  const std::size_t n = heap_.size();
  while (true) {
    std::size_t child = 2 * pos + 1;
    if (child >= n) break;
    if (child + 1 < n && before(heap_[child + 1], heap_[child])) ++child;
    if (!before(heap_[child], j)) break;
    place(pos, heap_[child]);
    pos = child;
  }
  place(pos, j);
}

}  // namespace l1inf
