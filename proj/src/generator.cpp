#include "flowsched/generator.hpp"

#include <cmath>
#include <stdexcept>

namespace flowsched {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::int64_t SplitMix64::next_uniform(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("next_uniform: lo > hi");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
    return lo + static_cast<std::int64_t>(next() % span);
}

bool SplitMix64::next_bernoulli(double p) {
    if (p <= 0.0) return false;  // no draw consumed, keeps p=0 streams stable
    if (p >= 1.0) {
        next();
        return true;
    }
    // Threshold on the raw 64-bit output; exact for p's binary value.
    const double threshold = std::ldexp(p, 64);
    return static_cast<double>(next()) < threshold;
}

void GenConfig::validate() const {
    if (types < 1) throw std::invalid_argument("GenConfig: types must be >= 1");
    if (machines < 1) throw std::invalid_argument("GenConfig: machines must be >= 1");
    if (jobs < 1) throw std::invalid_argument("GenConfig: jobs must be >= 1");
    if (dur_lo < 1) throw std::invalid_argument("GenConfig: dur_lo must be >= 1");
    if (dur_lo > dur_hi) throw std::invalid_argument("GenConfig: dur_lo > dur_hi");
    if (blocks_lo < 1) throw std::invalid_argument("GenConfig: blocks_lo must be >= 1");
    if (blocks_lo > blocks_hi) throw std::invalid_argument("GenConfig: blocks_lo > blocks_hi");
    if (tasks_lo < 1) throw std::invalid_argument("GenConfig: tasks_lo must be >= 1");
    if (tasks_lo > tasks_hi) throw std::invalid_argument("GenConfig: tasks_lo > tasks_hi");
    if (incapable_probability < 0.0 || incapable_probability >= 1.0)
        throw std::invalid_argument("GenConfig: incapable_probability must be in [0,1)");
}

Instance generate(const GenConfig& config) {
    config.validate();
    SplitMix64 rng(config.seed);
    const double p = config.incapable_probability;

    std::vector<Time> entries(static_cast<std::size_t>(config.machines) * config.types);
    for (std::size_t idx = 0; idx < entries.size(); ++idx) {
        Time value = rng.next_uniform(config.dur_lo, config.dur_hi);
        if (rng.next_bernoulli(p)) value = -value;
        entries[idx] = value;
    }
    // Columns that came out all-negative are redrawn, ascending column
    // order, until at least one machine is capable. Terminates almost
    // surely since p < 1.
    for (int tau = 0; tau < config.types; ++tau) {
        auto column_ok = [&]() {
            for (int i = 0; i < config.machines; ++i)
                if (entries[static_cast<std::size_t>(i) * config.types + tau] > 0) return true;
            return false;
        };
        while (!column_ok()) {
            for (int i = 0; i < config.machines; ++i) {
                Time value = rng.next_uniform(config.dur_lo, config.dur_hi);
                if (rng.next_bernoulli(p)) value = -value;
                entries[static_cast<std::size_t>(i) * config.types + tau] = value;
            }
        }
    }

    Instance instance;
    instance.matrix = TimeMatrix(config.machines, config.types, std::move(entries));
    instance.jobs.reserve(static_cast<std::size_t>(config.jobs));
    for (int l = 0; l < config.jobs; ++l) {
        Job job;
        const int blocks = static_cast<int>(rng.next_uniform(config.blocks_lo, config.blocks_hi));
        job.blocks.reserve(static_cast<std::size_t>(blocks));
        for (int phi = 0; phi < blocks; ++phi) {
            Block block;
            const int tasks = static_cast<int>(rng.next_uniform(config.tasks_lo, config.tasks_hi));
            block.task_types.reserve(static_cast<std::size_t>(tasks));
            for (int k = 0; k < tasks; ++k)
                block.task_types.push_back(static_cast<int>(rng.next_uniform(1, config.types)));
            job.blocks.push_back(std::move(block));
        }
        instance.jobs.push_back(std::move(job));
    }
    return instance;
}

}  // namespace flowsched
