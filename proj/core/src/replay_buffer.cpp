// Copyright 2026 The GANQ Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ganq/replay_buffer.hpp"

#include <stdexcept>

namespace ganq {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("ReplayBuffer: capacity must be positive");
  storage_.reserve(std::min<std::size_t>(capacity, 1 << 16));
}

void ReplayBuffer::push(Transition t) {
  if (storage_.size() < capacity_) {
    storage_.push_back(std::move(t));
    return;
  }
  storage_[head_] = std::move(t);
  head_ = (head_ + 1) % capacity_;
}

const Transition& ReplayBuffer::at(std::size_t i) const {
  if (i >= storage_.size()) throw std::out_of_range("ReplayBuffer::at");
  return storage_[(head_ + i) % storage_.size()];
}

std::vector<const Transition*> ReplayBuffer::sample(std::size_t m, Rng& rng) const {
  if (storage_.empty()) throw std::logic_error("ReplayBuffer: cannot sample an empty buffer");
  std::vector<const Transition*> batch;
  batch.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    batch.push_back(&storage_[rng.uniform_int(storage_.size())]);
  }
  return batch;
}

}  // namespace ganq
