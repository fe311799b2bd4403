#pragma once

// Instance generators for tests and benchmarks.

#include <cstdint>
#include <utility>

#include "tav/core.hpp"

namespace tav {

// n x n assembly with an all-distinct strength-tau glue on every interior
// abutment; producible at tau by construction.
std::pair<TileSystem, Assembly> generate_square(int32_t n, int32_t tau);

// 1 x n row with an all-distinct strength-tau glue on every abutment.
std::pair<TileSystem, Assembly> generate_line(int32_t n, int32_t tau);

// Random connected n-tile assembly grown by accretion, each abutment carrying
// a fresh glue with strength uniform in [1, tau]. Deterministic per seed.
std::pair<TileSystem, Assembly> generate_random_blob(int32_t n, int32_t tau, uint64_t rng_seed);

}  // namespace tav
