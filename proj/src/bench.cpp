#include "flowsched/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "flowsched/errors.hpp"

namespace flowsched {

namespace {

void check_range(const ParamRange& range, const char* name, std::int64_t min_lo = 1) {
    if (range.lo < min_lo)
        throw std::invalid_argument(std::string("BenchConfig: ") + name + ".lo must be >= " +
                                    std::to_string(min_lo));
    if (range.lo > range.hi)
        throw std::invalid_argument(std::string("BenchConfig: ") + name + ".lo > .hi");
}

}  // namespace

void BenchConfig::validate() const {
    if (instance_count < 1)
        throw std::invalid_argument("BenchConfig: instance_count must be >= 1");
    if (variants.empty()) throw std::invalid_argument("BenchConfig: no variants selected");
    for (std::size_t i = 0; i < variants.size(); ++i)
        for (std::size_t j = i + 1; j < variants.size(); ++j)
            if (variants[i] == variants[j])
                throw std::invalid_argument("BenchConfig: duplicate variant");
    if (std::find(variants.begin(), variants.end(), baseline) == variants.end())
        throw std::invalid_argument("BenchConfig: baseline variant not in the selected set");
    check_range(types, "types");
    check_range(machines, "machines");
    check_range(jobs, "jobs");
    check_range(tasks_per_job, "tasks_per_job");
    check_range(durations, "durations");
    check_range(blocks_per_job, "blocks_per_job");
    check_range(tasks_per_block, "tasks_per_block");
    if (threads < 0) throw std::invalid_argument("BenchConfig: threads must be >= 0");
    if (oracle) {
        const std::int64_t worst_tasks =
            single_task_blocks ? jobs.hi * tasks_per_job.hi
                               : jobs.hi * blocks_per_job.hi * tasks_per_block.hi;
        if (machines.hi > oracle_limits.max_machines || worst_tasks > oracle_limits.max_tasks)
            throw std::invalid_argument(
                "BenchConfig: oracle mode needs machines.hi <= " +
                std::to_string(oracle_limits.max_machines) + " and at most " +
                std::to_string(oracle_limits.max_tasks) + " tasks per instance");
    }
}

RatioBuckets bucketize(const std::vector<Ratio>& ratios) {
    RatioBuckets buckets;
    for (const Ratio& r : ratios) {
        const Time a = r.num, b = r.den;
        if (a < 0 || b <= 0)
            throw std::invalid_argument("bucketize: ratios must be nonnegative over positive");
        if (a < b)
            ++buckets.below_one;
        else if (a == b)
            ++buckets.equal_one;
        else if (5 * a < 6 * b)  // 1 < a/b < 1.2
            ++buckets.above_one_below_1_2;
        else if (a < 2 * b)  // 1.2 <= a/b < 2, left-closed at 1.2
            ++buckets.from_1_2_below_2;
        else if (a < 3 * b)
            ++buckets.from_2_below_3;
        else
            ++buckets.from_3_up;
    }
    return buckets;
}

namespace {

int resolve_threads(int configured, int instance_count) {
    int threads = configured;
    if (threads <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int>(hw);
    }
    return std::max(1, std::min(threads, instance_count));
}

// One instance of the experiment: derive the seed, draw the per-instance
// parameters (t, m, L, K, in that order), generate, then run and validate
// every variant.
BenchRow run_one(const BenchConfig& config, int index) {
    BenchRow row;
    row.instance = index;
    row.seed = config.base_seed + static_cast<std::uint64_t>(index);

    SplitMix64 rng(row.seed);
    GenConfig gen;
    gen.types = static_cast<int>(rng.next_uniform(config.types.lo, config.types.hi));
    gen.machines = static_cast<int>(rng.next_uniform(config.machines.lo, config.machines.hi));
    gen.jobs = static_cast<int>(rng.next_uniform(config.jobs.lo, config.jobs.hi));
    if (config.single_task_blocks) {
        const int k = static_cast<int>(
            rng.next_uniform(config.tasks_per_job.lo, config.tasks_per_job.hi));
        gen.blocks_lo = gen.blocks_hi = k;
        gen.tasks_lo = gen.tasks_hi = 1;
    } else {
        gen.blocks_lo = static_cast<int>(config.blocks_per_job.lo);
        gen.blocks_hi = static_cast<int>(config.blocks_per_job.hi);
        gen.tasks_lo = static_cast<int>(config.tasks_per_block.lo);
        gen.tasks_hi = static_cast<int>(config.tasks_per_block.hi);
    }
    gen.dur_lo = config.durations.lo;
    gen.dur_hi = config.durations.hi;
    gen.seed = rng.next();

    const Instance instance = generate(gen);
    row.t = gen.types;
    row.m = gen.machines;
    row.L = gen.jobs;

    for (Variant variant : config.variants) {
        const auto begin = std::chrono::steady_clock::now();
        const Schedule schedule = run_stream(instance, variant);
        const auto end = std::chrono::steady_clock::now();

        const ViolationReport report = check_schedule(instance, schedule);
        if (!report.ok())
            throw Error("bench: schedule failed validation (seed " + std::to_string(row.seed) +
                        ", variant " + std::string(variant_name(variant)) + "): " +
                        report.violations.front().to_string());

        row.makespans.push_back(schedule.makespan);
        row.wall_ms.push_back(
            std::chrono::duration<double, std::milli>(end - begin).count());
        row.idle_totals.push_back(idle_time(schedule, instance.matrix.machines()).total);
    }

    if (config.oracle)
        row.opt = brute_force_opt(instance, config.oracle_limits).opt_makespan;
    return row;
}

}  // namespace

BenchReport run_bench(const BenchConfig& config) {
    config.validate();

    BenchReport report;
    report.config = config;
    report.rows.resize(static_cast<std::size_t>(config.instance_count));

    const int threads = resolve_threads(config.threads, config.instance_count);
    std::atomic<int> next_index{1};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&]() {
        while (true) {
            const int index = next_index.fetch_add(1);
            if (index > config.instance_count) return;
            {
                std::scoped_lock lock(failure_mutex);
                if (failure) return;
            }
            try {
                report.rows[static_cast<std::size_t>(index - 1)] = run_one(config, index);
            } catch (...) {
                std::scoped_lock lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (std::thread& thread : pool) thread.join();
    }
    if (failure) std::rethrow_exception(failure);

    // Aggregate in instance order, independent of execution interleaving.
    const std::size_t baseline_index = static_cast<std::size_t>(
        std::find(config.variants.begin(), config.variants.end(), config.baseline) -
        config.variants.begin());
    for (std::size_t v = 0; v < config.variants.size(); ++v) {
        VariantAggregate agg;
        agg.variant = config.variants[v];
        std::vector<Ratio> ratios;
        ratios.reserve(report.rows.size());
        for (const BenchRow& row : report.rows) {
            ratios.push_back({row.makespans[v], row.makespans[baseline_index]});
            agg.makespan_total += row.makespans[v];
            agg.wall_ms_total += row.wall_ms[v];
            agg.idle_total += row.idle_totals[v];
            if (row.makespans[v] < row.makespans[baseline_index])
                ++agg.wins;
            else if (row.makespans[v] == row.makespans[baseline_index])
                ++agg.ties;
            else
                ++agg.losses;
        }
        agg.buckets = bucketize(ratios);
        report.aggregates.push_back(agg);
    }
    if (config.oracle)
        for (const BenchRow& row : report.rows)
            if (row.opt && row.makespans[baseline_index] == *row.opt)
                ++report.baseline_equals_opt;
    return report;
}

namespace {

std::string format_ms(double ms) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(3) << ms;
    return out.str();
}

std::string format_pct(std::int64_t count, std::int64_t total) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(1)
        << (total == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(total))
        << "%";
    return out.str();
}

}  // namespace

std::string report_render(const BenchReport& report, ReportFormat format, bool with_timings) {
    const BenchConfig& config = report.config;
    std::ostringstream out;

    if (format == ReportFormat::Csv) {
        out << "instance,seed,t,m,L,variant,makespan,wall_ms,idle_total";
        if (config.oracle) out << ",opt";
        out << "\n";
        for (const BenchRow& row : report.rows)
            for (std::size_t v = 0; v < config.variants.size(); ++v) {
                out << row.instance << ',' << row.seed << ',' << row.t << ',' << row.m << ','
                    << row.L << ',' << variant_name(config.variants[v]) << ','
                    << row.makespans[v] << ',' << format_ms(row.wall_ms[v]) << ','
                    << row.idle_totals[v];
                if (config.oracle) out << ',' << (row.opt ? *row.opt : -1);
                out << "\n";
            }
        return out.str();
    }

    out << "bench n=" << config.instance_count << " base_seed=" << config.base_seed
        << " baseline=" << variant_name(config.baseline) << " variants=";
    for (std::size_t v = 0; v < config.variants.size(); ++v)
        out << (v ? "," : "") << variant_name(config.variants[v]);
    out << "\n\n";

    out << "instance seed t m L";
    for (Variant variant : config.variants) out << " " << variant_name(variant);
    if (config.oracle) out << " opt";
    out << "\n";
    for (const BenchRow& row : report.rows) {
        out << row.instance << ' ' << row.seed << ' ' << row.t << ' ' << row.m << ' ' << row.L;
        for (std::size_t v = 0; v < config.variants.size(); ++v) out << ' ' << row.makespans[v];
        if (config.oracle) out << ' ' << (row.opt ? *row.opt : -1);
        out << "\n";
    }

    const std::int64_t n = config.instance_count;
    out << "\naggregate:\n";
    for (const VariantAggregate& agg : report.aggregates) {
        out << "  " << variant_name(agg.variant) << ": makespan_total=" << agg.makespan_total
            << " idle_total=" << agg.idle_total;
        if (with_timings)
            out << " wall_ms_total=" << format_ms(agg.wall_ms_total)
                << " wall_ms_mean=" << format_ms(agg.wall_ms_total / static_cast<double>(n));
        out << "\n";
        if (agg.variant == config.baseline) continue;
        out << "    vs " << variant_name(config.baseline) << ": wins=" << agg.wins
            << " ties=" << agg.ties << " losses=" << agg.losses << "\n";
        const RatioBuckets& b = agg.buckets;
        out << "    ratio buckets: <1: " << b.below_one << " (" << format_pct(b.below_one, n)
            << "), =1: " << b.equal_one << " (" << format_pct(b.equal_one, n) << "), (1,1.2): "
            << b.above_one_below_1_2 << " (" << format_pct(b.above_one_below_1_2, n)
            << "), [1.2,2): " << b.from_1_2_below_2 << " ("
            << format_pct(b.from_1_2_below_2, n) << "), [2,3): " << b.from_2_below_3 << " ("
            << format_pct(b.from_2_below_3, n) << "), [3,inf): " << b.from_3_up << " ("
            << format_pct(b.from_3_up, n) << ")\n";
    }
    if (config.oracle)
        out << "  baseline=opt in " << report.baseline_equals_opt << "/" << n << " ("
            << format_pct(report.baseline_equals_opt, n) << ")\n";
    return out.str();
}

}  // namespace flowsched
