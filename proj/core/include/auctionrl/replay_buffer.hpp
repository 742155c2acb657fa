#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "auctionrl/errors.hpp"

namespace auctionrl {

struct Transition {
  std::vector<double> state;
  std::vector<double> action;  // normalized, in [-1,1]^(2I)
  double reward = 0.0;         // raw €
  std::vector<double> next_state;
  bool truncated = false;
};

// Fixed-capacity FIFO ring; sampling is uniform with replacement.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity), storage_() {
    if (capacity == 0) throw ConfigError("replay buffer capacity must be positive");
    storage_.reserve(capacity);
  }

  void push(Transition tr) {
    if (storage_.size() < capacity_) {
      storage_.push_back(std::move(tr));
    } else {
      storage_[cursor_] = std::move(tr);
    }
    cursor_ = (cursor_ + 1) % capacity_;
  }

  std::vector<const Transition*> sample(std::size_t batch_size, std::mt19937_64& rng) const {
    if (storage_.size() < batch_size)
      throw NotEnoughSamplesError("buffer holds " + std::to_string(storage_.size()) +
                                  " transitions, batch needs " + std::to_string(batch_size));
    std::uniform_int_distribution<std::size_t> pick(0, storage_.size() - 1);
    std::vector<const Transition*> batch(batch_size);
    for (auto& slot : batch) slot = &storage_[pick(rng)];
    return batch;
  }

  std::size_t size() const { return storage_.size(); }
  std::size_t capacity() const { return capacity_; }
  const Transition& at(std::size_t i) const { return storage_.at(i); }

 private:
  std::size_t capacity_;
  std::size_t cursor_ = 0;
  std::vector<Transition> storage_;
};

}  // namespace auctionrl
