//
// Copyright 2026 The dpcp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPCP_RANDOM_H_
#define DPCP_RANDOM_H_

#include <array>
#include <cstdint>
#include <span>

namespace dpcp {

// Philox4x32-10 block function (Salmon, Moraes, Dror, Shaw; SC'11). Maps a
// 128-bit counter and a 64-bit key to 128 pseudo-random bits.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter Block(Counter counter, Key key);
};

// A replayable stream of random variates.
//
// The stream is keyed by a 64-bit seed. Counter words 2..3 hold the stream id
// and words 0..1 the block index, so distinct (seed, stream_id) pairs give
// non-overlapping sequences without any shared state. Variates are produced
// by fixed transforms so seeded replays are bit-stable for a given build:
//
//   Uniform()   top 53 bits of a 64-bit draw, scaled into [0, 1)
//   Gaussian()  Box-Muller on (u1 in (0,1], u2 in [0,1)); the sine branch is
//               cached and returned by the next call
//   Laplace(b)  inverse CDF on u in (0,1)
//
// Version tag: "philox4x32-10/box-muller/v1".
class RandomStream {
 public:
  static constexpr const char* kAlgorithm = "philox4x32-10/box-muller/v1";

  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint32_t NextU32();
  std::uint64_t NextU64();

  // Uniform on [0, 1).
  double Uniform();
  // Uniform on (0, 1).
  double UniformOpen();
  // Unbiased integer in [0, bound). bound must be positive.
  std::uint64_t UniformInt(std::uint64_t bound);

  double Gaussian();
  double Gaussian(double mean, double sd) { return mean + sd * Gaussian(); }
  double Laplace(double scale);

  // Fisher-Yates shuffle driven by UniformInt.
  template <typename T>
  void Shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(UniformInt(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  void Refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  Philox4x32::Counter buffer_{};
  int buffer_pos_ = 4;
  bool has_cached_gaussian_ = false;
  double cached_gaussian_ = 0.0;
};

// What a replication's substream is used for.
enum class StreamPurpose : std::uint64_t {
  kData = 0,
  kSplit = 1,
  kModel = 2,
  kMechanism = 3,
  kWarmup = 4,
};

// Stream id for substream `purpose` of replication `replication`.
constexpr std::uint64_t ReplicationStreamId(std::uint64_t replication,
                                            StreamPurpose purpose) {
  return (replication << 4) | static_cast<std::uint64_t>(purpose);
}

}  // namespace dpcp

#endif  // DPCP_RANDOM_H_
