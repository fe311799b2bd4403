#pragma once

// Benchmark harness for the producibility deciders. Emits CSV rows
// family,n,ns,pops,folds with median wall time over the repetitions. The
// reference decider runs on instances up to naive_max_n, must agree with the
// fast decider on every one, and is reported with family "<family>:naive".

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tav/core.hpp"

namespace tav {

struct BenchRecord {
    std::string family;
    int64_t n = 0;
    int64_t ns = 0;      // median wall-clock nanoseconds
    uint64_t pops = 0;   // heap pops (0 for the naive decider)
    uint64_t folds = 0;  // adjacency folds (0 for the naive decider)
};

struct BenchOptions {
    std::string family = "square";  // square | line
    int64_t min_n = 10000;
    int64_t max_n = 1000000;
    double factor = 3.16;  // size multiplier between steps
    int repetitions = 3;
    int64_t naive_max_n = 10000;
    bool run_naive = true;
    int32_t temperature = 2;
};

std::vector<BenchRecord> run_bench(const BenchOptions& options, std::ostream& csv);

// Least-squares slope of log(ns) against log(n) over the given records.
double fit_loglog_slope(const std::vector<BenchRecord>& records);

}  // namespace tav
