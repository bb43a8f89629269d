// Copyright 2026 The randlind Authors
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

// rng.hpp: deterministic per-stream random engines.
//
// Every random object of a realization draws from its own engine whose seed
// is a hash of (master seed, realization index, stream tag). Realizations can
// therefore be generated in any order, on any worker, with identical results.

#pragma once

#include "core.hpp"

#include <cstdint>
#include <random>

namespace randlind {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream tags. Jump operator l (0-based) uses jump_base + l.
namespace stream {
inline constexpr std::uint64_t hamiltonian = 0x48;       // 'H'
inline constexpr std::uint64_t coefficients = 0x77;      // 'w', basis-expansion route
inline constexpr std::uint64_t auxiliary = 0x61;         // 'a', test/analysis draws
inline constexpr std::uint64_t jump_base = 0x5700000000ULL;
inline constexpr std::uint64_t jump(int l) { return jump_base + static_cast<std::uint64_t>(l); }
}  // namespace stream

inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t realization, std::uint64_t tag) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ realization);
    return splitmix64(h ^ tag);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double normal(double sigma) { return sigma * normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Source of independent streams for one (seed, realization_index) pair.
class RealizationRng {
public:
    RealizationRng(std::uint64_t master_seed, std::uint64_t realization)
        : master_(master_seed), realization_(realization) {}
    explicit RealizationRng(const ModelParams& p) : RealizationRng(p.seed, p.realization_index) {}

    Rng stream(std::uint64_t tag) const { return Rng(stream_seed(master_, realization_, tag)); }

private:
    std::uint64_t master_;
    std::uint64_t realization_;
};

}  // namespace randlind
