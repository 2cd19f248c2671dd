// Copyright 2026 The popdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "popdp/error.hpp"
#include "popdp/random.hpp"

namespace popdp::agent {

// Fixed-capacity ring buffer with uniform sampling over current contents.
template <class T>
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw InputError("replay capacity must be positive");
    items_.reserve(std::min<std::size_t>(capacity, 1 << 16));
  }

  void push(T item) {
    if (items_.size() < capacity_) {
      items_.push_back(std::move(item));
    } else {
      items_[head_] = std::move(item);
    }
    head_ = (head_ + 1) % capacity_;
    ++inserted_;
  }

  std::size_t size() const noexcept { return items_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t total_inserted() const noexcept { return inserted_; }
  bool empty() const noexcept { return items_.empty(); }

  // Storage order, not insertion order, once the buffer has wrapped.
  const T& operator[](std::size_t i) const { return items_.at(i); }

  const T& sample(Rng& rng) const {
    if (items_.empty()) throw InputError("sampling from an empty replay buffer");
    return items_[uniform_index(rng, items_.size())];
  }

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;
  std::size_t inserted_ = 0;
  std::vector<T> items_;
};

}  // namespace popdp::agent
