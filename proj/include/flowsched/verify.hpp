#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flowsched/model.hpp"
#include "flowsched/scheduler.hpp"

namespace flowsched {

enum class ScheduleViolationKind {
    MachineOverlap,
    Precedence,
    WrongDuration,
    IncapableMachine,
    NegativeStart,
    MissingTask,
    DuplicateTask,
    UnknownTask,   // assignment addresses no task of the instance
    TypeMismatch,  // assignment's task_type disagrees with the instance
};

const char* to_string(ScheduleViolationKind kind);

struct ScheduleViolation {
    ScheduleViolationKind kind;
    TaskRef task;
    TaskRef other;  // second participant for overlaps, else zero
    int machine = 0;
    std::string detail;

    std::string to_string() const;
};

struct ViolationReport {
    std::vector<ScheduleViolation> violations;

    bool ok() const { return violations.empty(); }
};

// Re-checks a schedule against the model rules from scratch: per-machine
// interval disjointness, block precedence per job, end - start = I[i][tau],
// capability, start >= 0, and a bijection between instance tasks and
// assignments. Deliberately shares no code with SchedulerState or
// MachineTimeline.
ViolationReport check_schedule(const Instance& instance, const Schedule& schedule);

struct OracleLimits {
    int max_tasks = 7;
    int max_machines = 3;
};

struct OptResult {
    Time opt_makespan = 0;
    Schedule witness;         // assignments in stream order
    std::uint64_t explored = 0;  // (assignment, ordering) combinations enumerated
};

// Offline optimum by exhaustion: every mapping of tasks to capable machines
// times every per-machine ordering; earliest starts per combination by
// longest-path relaxation over block + machine-sequence edges. Cyclic
// combinations are skipped. Ties prefer the lexicographically smallest
// assignment vector. Throws TooLargeError beyond the limits and
// NoCapableMachineError for an unsolvable referenced type.
OptResult brute_force_opt(const Instance& instance, OracleLimits limits = {});

struct IdleTimes {
    Time total = 0;
    std::vector<Time> per_machine;  // machine 1..m at index 0..m-1
};

// Per machine: horizon minus busy time. Machines without tasks contribute 0.
IdleTimes idle_time(const Schedule& schedule, int machine_count);

}  // namespace flowsched
