#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "flowsched/model.hpp"
#include "flowsched/timeline.hpp"

namespace flowsched {

// The three greedy policies: earliest completion time, earliest start time,
// shortest processing time.
enum class Variant { Ect, Est, Spt };

// Accepts "ect"/"est"/"spt" and the aliases "3"/"4"/"5".
Variant variant_from_name(std::string_view name);
std::string_view variant_name(Variant variant);

struct Assignment {
    TaskRef task;
    int task_type = 0;
    int machine = 0;  // 1-based
    Time start = 0;
    Time end = 0;

    bool operator==(const Assignment&) const = default;
};

struct Schedule {
    std::vector<Assignment> assignments;  // stream order
    Time makespan = 0;

    bool operator==(const Schedule&) const = default;
};

struct MachineChoice {
    int machine = 0;
    Time start = 0;
};

// Online engine state: one timeline per machine plus per-job block
// bookkeeping. Decisions are final; there is no undo.
class SchedulerState {
public:
    explicit SchedulerState(const Instance& instance);

    // Ready time of the job's current block: 0 for the first block, else the
    // max end over the previous block's assignments.
    Time block_ready(int job) const;

    // Candidate selection without committing. All three scan capable
    // machines in ascending index order, so ties resolve to the lowest
    // index. Throw NoCapableMachineError when the type has no capable
    // machine.
    MachineChoice choose_ect(int task_type, Time ready) const;
    MachineChoice choose_est(int task_type, Time ready) const;
    MachineChoice choose_spt(int task_type, Time ready) const;
    MachineChoice choose(Variant variant, int task_type, Time ready) const;

    // Commits the variant's choice for the next task of the stream. Tasks of
    // one job must arrive block by block, positions in order; different jobs
    // may interleave freely. Throws std::invalid_argument on an out-of-order
    // arrival.
    Assignment schedule_task(const TaskRef& ref, Variant variant);

    const MachineTimeline& timeline(int machine) const;
    const Instance& instance() const { return *instance_; }

private:
    struct JobProgress {
        int current_block = 1;
        int tasks_done = 0;      // in current block
        Time ready = 0;          // ready time of current block
        Time block_max_end = 0;  // max end seen in current block
    };

    const Instance* instance_;
    std::vector<MachineTimeline> timelines_;
    std::vector<JobProgress> progress_;
};

// Canonical one-dimensional task order: jobs in order, blocks in order,
// positions in order.
std::vector<TaskRef> enumerate_stream(const Instance& instance);

// Runs the whole stream under one variant. Propagates
// NoCapableMachineError naming the failing task.
Schedule run_stream(const Instance& instance, Variant variant);

struct LowerBounds {
    // Max over jobs of the sum over blocks of the longest unavoidable task
    // (min capable duration) in the block.
    Time path_bound = 0;
    // ceil(sum of min capable durations over all tasks / m).
    Time load_bound = 0;

    Time combined() const { return path_bound > load_bound ? path_bound : load_bound; }
};

LowerBounds makespan_lower_bounds(const Instance& instance);

}  // namespace flowsched
