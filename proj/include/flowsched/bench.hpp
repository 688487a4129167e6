#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flowsched/generator.hpp"
#include "flowsched/model.hpp"
#include "flowsched/scheduler.hpp"
#include "flowsched/verify.hpp"

namespace flowsched {

// Inclusive integer range a per-instance parameter is drawn from.
struct ParamRange {
    std::int64_t lo = 1;
    std::int64_t hi = 1;
};

struct BenchConfig {
    int instance_count = 1;
    std::vector<Variant> variants{Variant::Ect, Variant::Est, Variant::Spt};
    Variant baseline = Variant::Ect;
    std::uint64_t base_seed = 1;

    ParamRange types{1, 20};
    ParamRange machines{1, 20};
    ParamRange jobs{1, 50};
    // Tasks per job when single_task_blocks (every block holds one task,
    // matching the legacy corpus shape).
    ParamRange tasks_per_job{1, 10};
    ParamRange durations{1, 100};

    bool single_task_blocks = true;
    // General shape, used when !single_task_blocks.
    ParamRange blocks_per_job{1, 1};
    ParamRange tasks_per_block{1, 1};

    bool oracle = false;  // tiny configurations only
    OracleLimits oracle_limits;

    int threads = 0;  // 0 = hardware default

    void validate() const;  // throws std::invalid_argument
};

struct BenchRow {
    int instance = 0;          // 1-based
    std::uint64_t seed = 0;    // base_seed + instance
    int t = 0;
    int m = 0;
    int L = 0;
    // Aligned with config.variants.
    std::vector<Time> makespans;
    std::vector<double> wall_ms;
    std::vector<Time> idle_totals;
    std::optional<Time> opt;
};

// Exact integer makespan ratio a/b of a variant against the baseline.
struct Ratio {
    Time num = 0;  // variant makespan
    Time den = 1;  // baseline makespan
};

// The report's histogram cells for ratio r = a/b:
//   r < 1, r = 1, 1 < r < 1.2, 1.2 <= r < 2, 2 <= r < 3, 3 <= r.
// Comparisons are exact on integers (5a vs 6b for the 1.2 boundary).
struct RatioBuckets {
    std::int64_t below_one = 0;
    std::int64_t equal_one = 0;
    std::int64_t above_one_below_1_2 = 0;
    std::int64_t from_1_2_below_2 = 0;
    std::int64_t from_2_below_3 = 0;
    std::int64_t from_3_up = 0;

    std::int64_t total() const {
        return below_one + equal_one + above_one_below_1_2 + from_1_2_below_2 +
               from_2_below_3 + from_3_up;
    }
};

RatioBuckets bucketize(const std::vector<Ratio>& ratios);

struct VariantAggregate {
    Variant variant;
    RatioBuckets buckets;  // vs baseline; trivial for the baseline itself
    std::int64_t wins = 0;   // strictly better than baseline
    std::int64_t ties = 0;
    std::int64_t losses = 0;
    Time makespan_total = 0;
    double wall_ms_total = 0.0;
    Time idle_total = 0;
};

struct BenchReport {
    BenchConfig config;
    std::vector<BenchRow> rows;
    std::vector<VariantAggregate> aggregates;  // aligned with config.variants
    std::int64_t baseline_equals_opt = 0;      // only meaningful with oracle
};

// Generates instance_count instances (instance i uses seed base_seed + i;
// parameter draws precede the generator seed draw, in the declared field
// order), runs every selected variant, validates every schedule, measures
// wall time with a monotonic clock, and aggregates in instance order.
// Instances run concurrently up to the thread cap; makespans are
// deterministic, wall times informative only.
BenchReport run_bench(const BenchConfig& config);

enum class ReportFormat { Text, Csv };

// Csv: "instance,seed,t,m,L,variant,makespan,wall_ms,idle_total[,opt]" rows.
// Text: per-instance rows plus the aggregate block (buckets, win/tie/loss);
// wall-time lines are emitted only when with_timings is set, so the
// remainder is reproducible byte for byte.
std::string report_render(const BenchReport& report, ReportFormat format,
                          bool with_timings = true);

}  // namespace flowsched
