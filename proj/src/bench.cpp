#include "tav/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "tav/gen.hpp"
#include "tav/producible.hpp"

namespace tav {

namespace {

int64_t median_ns(std::vector<int64_t>& samples) {
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

template <typename Fn>
int64_t timed(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
}

void emit(std::ostream& csv, const BenchRecord& r) {
    csv << r.family << ',' << r.n << ',' << r.ns << ',' << r.pops << ',' << r.folds << '\n';
    csv.flush();
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchOptions& options, std::ostream& csv) {
    if (options.family != "square" && options.family != "line") {
        throw Error("unknown bench family '" + options.family + "'");
    }
    if (options.min_n < 1 || options.max_n < options.min_n || options.factor <= 1.0 ||
        options.repetitions < 1) {
        throw Error("invalid bench options");
    }

    std::vector<BenchRecord> records;
    csv << "family,n,ns,pops,folds\n";

    int64_t previous_actual = -1;
    for (int64_t target = options.min_n; target <= options.max_n;
         target = std::max(target + 1, static_cast<int64_t>(std::llround(target * options.factor)))) {
        TileSystem sys;
        std::optional<Assembly> assembly;
        int64_t actual;
        if (options.family == "square") {
            const int32_t side = std::max<int32_t>(1, static_cast<int32_t>(std::llround(std::sqrt(
                                                           static_cast<double>(target)))));
            actual = static_cast<int64_t>(side) * side;
            if (actual == previous_actual) continue;
            auto [s, a] = generate_square(side, options.temperature);
            sys = std::move(s);
            assembly.emplace(std::move(a));
        } else {
            actual = target;
            if (actual == previous_actual) continue;
            auto [s, a] = generate_line(static_cast<int32_t>(actual), options.temperature);
            sys = std::move(s);
            assembly.emplace(std::move(a));
        }
        previous_actual = actual;

        ProducibleOptions run_opts;
        run_opts.build_witness = false;

        BenchRecord fast_rec{options.family, actual, 0, 0, 0};
        std::vector<int64_t> samples;
        for (int r = 0; r < options.repetitions; ++r) {
            ProducibleResult res;
            samples.push_back(timed([&] {
                res = is_producible_fast(*assembly, sys.tileset, sys.temperature, run_opts);
            }));
            if (!res.producible) throw Error("generated instance reported not producible");
            fast_rec.pops = res.stats.heap_pops;
            fast_rec.folds = res.stats.adjacency_folds;
        }
        fast_rec.ns = median_ns(samples);

        // Amortized bound on the fold counter: within a constant of n log n.
        const double bound = 8.0 * static_cast<double>(actual) *
                             (std::log2(static_cast<double>(actual)) + 1.0);
        if (static_cast<double>(fast_rec.folds) > bound) {
            throw Error("adjacency folds " + std::to_string(fast_rec.folds) +
                        " exceed the amortized bound for n=" + std::to_string(actual));
        }

        emit(csv, fast_rec);
        records.push_back(fast_rec);

        if (options.run_naive && actual <= options.naive_max_n) {
            BenchRecord naive_rec{options.family + ":naive", actual, 0, 0, 0};
            std::vector<int64_t> naive_samples;
            for (int r = 0; r < options.repetitions; ++r) {
                ProducibleResult res;
                naive_samples.push_back(timed([&] {
                    res = is_producible_naive(*assembly, sys.tileset, sys.temperature, run_opts);
                }));
                if (!res.producible) throw Error("naive decider disagrees on a benched instance");
            }
            naive_rec.ns = median_ns(naive_samples);
            emit(csv, naive_rec);
            records.push_back(naive_rec);
        }
    }
    return records;
}

double fit_loglog_slope(const std::vector<BenchRecord>& records) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t k = 0;
    for (const BenchRecord& r : records) {
        const double x = std::log(static_cast<double>(r.n));
        const double y = std::log(static_cast<double>(std::max<int64_t>(r.ns, 1)));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++k;
    }
    if (k < 2) throw Error("need at least two records to fit a slope");
    const double denom = k * sxx - sx * sx;
    return (k * sxy - sx * sy) / denom;
}

}  // namespace tav
