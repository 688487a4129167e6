#pragma once

#include <cstdint>

#include "flowsched/model.hpp"

namespace flowsched {

// splitmix64: fixed, mathematically specified recurrence so generated
// corpora reproduce bit-for-bit across implementations and languages.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();

    // Uniform draw in [lo, hi] via lo + raw % (hi-lo+1). The modulo bias is
    // accepted: ranges stay below ~10^3 against 2^64 outputs. Throws
    // std::invalid_argument when lo > hi.
    std::int64_t next_uniform(std::int64_t lo, std::int64_t hi);

    // True with probability p. Consumes one raw draw; p <= 0 never draws.
    bool next_bernoulli(double p);

private:
    std::uint64_t state_;
};

struct GenConfig {
    int types = 1;
    int machines = 1;
    int jobs = 1;
    Time dur_lo = 1;
    Time dur_hi = 1;
    int blocks_lo = 1;  // blocks per job
    int blocks_hi = 1;
    int tasks_lo = 1;   // tasks per block
    int tasks_hi = 1;
    double incapable_probability = 0.0;  // must stay < 1
    std::uint64_t seed = 0;

    // Throws std::invalid_argument describing the first bad field.
    void validate() const;
};

// Deterministic instance generation; a pure function of the config. Draw
// order is fixed: matrix entries row-major (value, then sign draw when
// p > 0), all-negative columns redrawn in ascending column order, then per
// job the block count, then per block its length followed by that many type
// draws. The result passes validate_instance.
Instance generate(const GenConfig& config);

}  // namespace flowsched
