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

#ifndef GANQ_REPLAY_BUFFER_HPP_
#define GANQ_REPLAY_BUFFER_HPP_

#include <cstddef>
#include <vector>

#include "ganq/environments.hpp"
#include "ganq/rng.hpp"

namespace ganq {

// Fixed-capacity FIFO ring of transitions with uniform sampling with
// replacement.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);
  // Throws std::logic_error when empty.
  std::vector<const Transition*> sample(std::size_t m, Rng& rng) const;

  std::size_t size() const { return storage_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return storage_.empty(); }
  // i = 0 is the oldest stored transition.
  const Transition& at(std::size_t i) const;

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;  // next slot to overwrite once full
  std::vector<Transition> storage_;
};

}  // namespace ganq

#endif  // GANQ_REPLAY_BUFFER_HPP_
