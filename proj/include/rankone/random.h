// Copyright 2026 The rankone Authors
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

// Portable seeded streams. Every draw is defined by the mt19937_64 output
// sequence alone, so results match across standard libraries.

#ifndef RANKONE_RANDOM_H_
#define RANKONE_RANDOM_H_

#include <cstdint>
#include <random>

namespace rankone {

class StreamRng {
 public:
  // Seeded with std::seed_seq{seed_lo, seed_hi, stream_lo, stream_hi}.
  StreamRng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t Next() { return engine_(); }

  // Top 53 bits mapped to [lo, hi).
  double Uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  // Integer in [lo, hi]; the modulo bias is negligible for small ranges.
  int UniformInt(int lo, int hi) {
    return lo + static_cast<int>(engine_() %
                                 static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool Bit() { return engine_() >> 63; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rankone

#endif  // RANKONE_RANDOM_H_
