// Copyright 2026 The posmap authors
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

#ifndef POSMAP_RNG_HPP
#define POSMAP_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "posmap/cmatrix.hpp"

namespace posmap {

// mt19937_64 stream with hand-rolled uniform/gaussian mappings so that the
// produced doubles depend only on the seed, not on any library-defined
// distribution. Reproducibility outranks raw speed here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller, one spare cached.
  double gaussian();

  // Complex with independent N(0,1) real and imaginary parts.
  cplx cgaussian() { return {gaussian(), gaussian()}; }

  // Entrywise complex-Gaussian (Ginibre) matrix.
  CMatrix ginibre(std::size_t rows, std::size_t cols);

  // Gaussian column vector normalized to the unit sphere.
  CMatrix unit_vector(std::size_t n);

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Deterministic per-index substream seed (splitmix64 mix of base and index).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// (G + G*)/2 for Ginibre G: a GUE-style random Hermitian matrix.
CMatrix random_hermitian(Rng& rng, std::size_t n);

}  // namespace posmap

#endif  // POSMAP_RNG_HPP
