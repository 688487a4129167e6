#include "flowsched/timeline.hpp"

#include <algorithm>
#include <stdexcept>

#include "flowsched/errors.hpp"

namespace flowsched {

Time MachineTimeline::earliest_fit(Time ready, Time duration) const {
    if (duration < 1) throw std::invalid_argument("earliest_fit: duration must be >= 1");
    if (ready < 0) throw std::invalid_argument("earliest_fit: ready must be >= 0");

    Time candidate = ready;
    // First interval that could still conflict: half-open semantics let the
    // candidate start exactly where an interval ends.
    auto it = std::upper_bound(busy_.begin(), busy_.end(), candidate,
                               [](Time t, const Interval& iv) { return t < iv.end; });
    for (; it != busy_.end(); ++it) {
        if (it->start >= candidate + duration) break;  // fits in the gap before *it
        candidate = it->end;
    }
    return candidate;
}

void MachineTimeline::reserve(Time start, Time duration) {
    if (duration < 1) throw std::invalid_argument("reserve: duration must be >= 1");
    if (start < 0) throw std::invalid_argument("reserve: start must be >= 0");

    const Time end = start + duration;
    auto it = std::lower_bound(busy_.begin(), busy_.end(), start,
                               [](const Interval& iv, Time t) { return iv.start < t; });
    if (it != busy_.begin()) {
        auto prev = std::prev(it);
        if (prev->end > start) throw OverlapError(prev->start, prev->end);
    }
    if (it != busy_.end() && it->start < end) throw OverlapError(it->start, it->end);

    it = busy_.insert(it, Interval{start, end});
    // Coalesce touching neighbours; observable behavior is unchanged.
    if (it != busy_.begin()) {
        auto prev = std::prev(it);
        if (prev->end == it->start) {
            prev->end = it->end;
            it = busy_.erase(it);
            it = std::prev(it);
        }
    }
    auto next = std::next(it);
    if (next != busy_.end() && it->end == next->start) {
        it->end = next->end;
        busy_.erase(next);
    }
}

Time MachineTimeline::horizon() const {
    return busy_.empty() ? 0 : busy_.back().end;
}

Time MachineTimeline::busy_total() const {
    Time total = 0;
    for (const Interval& iv : busy_) total += iv.length();
    return total;
}

}  // namespace flowsched
