#pragma once

#include <vector>

#include "flowsched/model.hpp"

namespace flowsched {

// Half-open busy interval [start, end).
struct Interval {
    Time start = 0;
    Time end = 0;

    Time length() const { return end - start; }
    bool operator==(const Interval&) const = default;
};

// Busy intervals of one machine, sorted by start, pairwise disjoint.
// Touching endpoints are allowed and get coalesced on reservation.
class MachineTimeline {
public:
    // Minimal d >= ready such that [d, d+duration) misses every busy
    // interval. Gaps between reservations are eligible. Throws
    // std::invalid_argument when duration < 1 or ready < 0.
    Time earliest_fit(Time ready, Time duration) const;

    // Inserts [start, start+duration). Throws OverlapError when the interval
    // intersects an existing reservation.
    void reserve(Time start, Time duration);

    // Max end over busy intervals, 0 when empty.
    Time horizon() const;

    Time busy_total() const;
    Time idle_total() const { return horizon() - busy_total(); }

    const std::vector<Interval>& busy() const { return busy_; }
    bool empty() const { return busy_.empty(); }

private:
    std::vector<Interval> busy_;
};

}  // namespace flowsched
