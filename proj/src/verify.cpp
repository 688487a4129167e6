#include "flowsched/verify.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <utility>

#include "flowsched/errors.hpp"

namespace flowsched {

const char* to_string(ScheduleViolationKind kind) {
    switch (kind) {
        case ScheduleViolationKind::MachineOverlap: return "MACHINE_OVERLAP";
        case ScheduleViolationKind::Precedence: return "PRECEDENCE";
        case ScheduleViolationKind::WrongDuration: return "WRONG_DURATION";
        case ScheduleViolationKind::IncapableMachine: return "INCAPABLE_MACHINE";
        case ScheduleViolationKind::NegativeStart: return "NEGATIVE_START";
        case ScheduleViolationKind::MissingTask: return "MISSING_TASK";
        case ScheduleViolationKind::DuplicateTask: return "DUPLICATE_TASK";
        case ScheduleViolationKind::UnknownTask: return "UNKNOWN_TASK";
        case ScheduleViolationKind::TypeMismatch: return "TYPE_MISMATCH";
    }
    return "UNKNOWN";
}

std::string ScheduleViolation::to_string() const {
    std::string s = flowsched::to_string(kind);
    s += "(" + task.to_string();
    if (other.job != 0) s += " vs " + other.to_string();
    if (machine != 0) s += " on M" + std::to_string(machine);
    s += ")";
    if (!detail.empty()) s += " " + detail;
    return s;
}

// The checker re-derives everything from the assignment list and the raw
// matrix. It never calls into SchedulerState or MachineTimeline.
ViolationReport check_schedule(const Instance& instance, const Schedule& schedule) {
    ViolationReport report;
    const TimeMatrix& matrix = instance.matrix;

    auto add = [&report](ScheduleViolationKind kind, const TaskRef& task,
                         const TaskRef& other = {}, int machine = 0,
                         std::string detail = "") {
        report.violations.push_back({kind, task, other, machine, std::move(detail)});
    };

    // Bijection between instance coordinates and assignments, plus per-task
    // field checks, in one pass.
    std::map<TaskRef, int> seen;  // coordinate -> count
    // Per (job, block) start/end envelopes for the precedence check.
    std::map<std::pair<int, int>, std::pair<Time, Time>> block_span;  // min start, max end
    for (const Assignment& a : schedule.assignments) {
        bool known = a.task.job >= 1 && a.task.job <= instance.job_count() &&
                     a.task.block >= 1 &&
                     a.task.block <= instance.jobs[a.task.job - 1].block_count() &&
                     a.task.pos >= 1 &&
                     a.task.pos <= instance.jobs[a.task.job - 1]
                                       .blocks[a.task.block - 1]
                                       .length();
        if (!known) {
            add(ScheduleViolationKind::UnknownTask, a.task);
            continue;
        }
        if (++seen[a.task] == 2) add(ScheduleViolationKind::DuplicateTask, a.task);

        auto key = std::make_pair(a.task.job, a.task.block);
        auto [it, inserted] = block_span.try_emplace(key, a.start, a.end);
        if (!inserted) {
            it->second.first = std::min(it->second.first, a.start);
            it->second.second = std::max(it->second.second, a.end);
        }

        int expected_type = instance.jobs[a.task.job - 1]
                                .blocks[a.task.block - 1]
                                .task_types[a.task.pos - 1];
        if (a.task_type != expected_type) {
            add(ScheduleViolationKind::TypeMismatch, a.task, {}, 0,
                "declared type " + std::to_string(a.task_type) + ", instance has " +
                    std::to_string(expected_type));
            continue;
        }

        if (a.start < 0) add(ScheduleViolationKind::NegativeStart, a.task, {}, a.machine);

        if (a.machine < 1 || a.machine > matrix.machines() ||
            matrix.at(a.machine, expected_type) <= 0) {
            add(ScheduleViolationKind::IncapableMachine, a.task, {}, a.machine);
        } else if (a.end - a.start != matrix.at(a.machine, expected_type)) {
            add(ScheduleViolationKind::WrongDuration, a.task, {}, a.machine,
                "got " + std::to_string(a.end - a.start) + ", expected " +
                    std::to_string(matrix.at(a.machine, expected_type)));
        }
    }

    for (int l = 1; l <= instance.job_count(); ++l) {
        const Job& job = instance.jobs[l - 1];
        for (int phi = 1; phi <= job.block_count(); ++phi)
            for (int k = 1; k <= job.blocks[phi - 1].length(); ++k)
                if (!seen.count({l, phi, k}))
                    add(ScheduleViolationKind::MissingTask, {l, phi, k});
    }

    // Per-machine disjointness via a plain sort of (start, end) pairs.
    std::map<int, std::vector<const Assignment*>> per_machine;
    for (const Assignment& a : schedule.assignments)
        if (a.machine >= 1) per_machine[a.machine].push_back(&a);
    for (auto& [machine, list] : per_machine) {
        std::sort(list.begin(), list.end(), [](const Assignment* x, const Assignment* y) {
            if (x->start != y->start) return x->start < y->start;
            return x->end < y->end;
        });
        for (std::size_t i = 1; i < list.size(); ++i)
            if (list[i - 1]->end > list[i]->start)
                add(ScheduleViolationKind::MachineOverlap, list[i - 1]->task, list[i]->task,
                    machine);
    }

    // Block precedence per job over whatever assignments are present. A
    // conflict among present tasks is a genuine violation even when other
    // tasks are missing (those are reported separately).
    for (int l = 1; l <= instance.job_count(); ++l) {
        const Job& job = instance.jobs[l - 1];
        for (int phi = 2; phi <= job.block_count(); ++phi) {
            auto prev = block_span.find({l, phi - 1});
            auto cur = block_span.find({l, phi});
            if (prev == block_span.end() || cur == block_span.end()) continue;
            if (cur->second.first < prev->second.second)
                add(ScheduleViolationKind::Precedence, {l, phi, 0}, {l, phi - 1, 0}, 0,
                    "block starts at " + std::to_string(cur->second.first) +
                        " before previous block ends at " + std::to_string(prev->second.second));
        }
    }

    return report;
}

namespace {

struct OracleTask {
    TaskRef ref;
    int type = 0;
};

// Longest-path earliest starts for one (assignment, ordering) combination.
// Returns false when relaxation fails to settle within n passes (a cycle).
bool relax_starts(const std::vector<std::pair<int, int>>& edges,
                  const std::vector<Time>& durations, std::vector<Time>& starts) {
    const int n = static_cast<int>(starts.size());
    std::fill(starts.begin(), starts.end(), Time{0});
    for (int pass = 0; pass <= n; ++pass) {
        bool changed = false;
        for (const auto& [from, to] : edges) {
            Time candidate = starts[from] + durations[from];
            if (candidate > starts[to]) {
                starts[to] = candidate;
                changed = true;
            }
        }
        if (!changed) return true;
    }
    return false;
}

}  // namespace

OptResult brute_force_opt(const Instance& instance, OracleLimits limits) {
    const long long total = instance.total_tasks();
    if (total > limits.max_tasks)
        throw TooLargeError("TOO_LARGE: " + std::to_string(total) + " tasks exceed limit " +
                            std::to_string(limits.max_tasks));
    if (instance.matrix.machines() > limits.max_machines)
        throw TooLargeError("TOO_LARGE: " + std::to_string(instance.matrix.machines()) +
                            " machines exceed limit " + std::to_string(limits.max_machines));

    std::vector<OracleTask> tasks;
    for (const TaskRef& ref : enumerate_stream(instance))
        tasks.push_back({ref, instance.task_type_at(ref)});
    const int n = static_cast<int>(tasks.size());

    std::vector<std::vector<int>> capable(n);
    for (int v = 0; v < n; ++v) {
        capable[v] = capable_machines(instance.matrix, tasks[v].type);
        if (capable[v].empty()) throw NoCapableMachineError(tasks[v].type);
    }

    // Block edges are fixed across combinations.
    std::vector<std::pair<int, int>> block_edges;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (tasks[u].ref.job == tasks[v].ref.job &&
                tasks[u].ref.block + 1 == tasks[v].ref.block)
                block_edges.emplace_back(u, v);

    OptResult result;
    result.opt_makespan = std::numeric_limits<Time>::max();

    std::vector<int> choice(n, 0);  // index into capable[v]
    std::vector<Time> durations(n), starts(n);
    std::vector<std::pair<int, int>> edges;

    bool more_assignments = n > 0;
    while (more_assignments) {
        std::vector<std::vector<int>> on_machine(instance.matrix.machines() + 1);
        for (int v = 0; v < n; ++v) {
            int machine = capable[v][choice[v]];
            durations[v] = instance.matrix.at(machine, tasks[v].type);
            on_machine[machine].push_back(v);
        }

        // Per-machine orderings via an odometer of permutations. Each list
        // starts in stream order (= sorted), so next_permutation walks all
        // orders lexicographically.
        bool more_orders = true;
        while (more_orders) {
            result.explored += 1;
            edges = block_edges;
            for (const auto& list : on_machine)
                for (std::size_t i = 1; i < list.size(); ++i)
                    edges.emplace_back(list[i - 1], list[i]);

            if (relax_starts(edges, durations, starts)) {
                Time makespan = 0;
                for (int v = 0; v < n; ++v)
                    makespan = std::max(makespan, starts[v] + durations[v]);
                // Strict < keeps the first-found combination, i.e. the
                // lexicographically smallest assignment vector.
                if (makespan < result.opt_makespan) {
                    result.opt_makespan = makespan;
                    result.witness.assignments.clear();
                    for (int v = 0; v < n; ++v) {
                        Assignment a;
                        a.task = tasks[v].ref;
                        a.task_type = tasks[v].type;
                        a.machine = capable[v][choice[v]];
                        a.start = starts[v];
                        a.end = starts[v] + durations[v];
                        result.witness.assignments.push_back(a);
                    }
                    result.witness.makespan = makespan;
                }
            }

            more_orders = false;
            for (auto& list : on_machine) {
                if (std::next_permutation(list.begin(), list.end())) {
                    more_orders = true;
                    break;
                }
                // rolled over to sorted order; carry to the next machine
            }
        }

        more_assignments = false;
        for (int v = 0; v < n; ++v) {
            if (++choice[v] < static_cast<int>(capable[v].size())) {
                more_assignments = true;
                break;
            }
            choice[v] = 0;
        }
    }

    if (n == 0) result.opt_makespan = 0;
    return result;
}

IdleTimes idle_time(const Schedule& schedule, int machine_count) {
    IdleTimes idle;
    idle.per_machine.assign(static_cast<std::size_t>(machine_count), 0);
    std::vector<Time> horizon(static_cast<std::size_t>(machine_count), 0);
    std::vector<Time> busy(static_cast<std::size_t>(machine_count), 0);
    for (const Assignment& a : schedule.assignments) {
        if (a.machine < 1 || a.machine > machine_count) continue;
        horizon[a.machine - 1] = std::max(horizon[a.machine - 1], a.end);
        busy[a.machine - 1] += a.end - a.start;
    }
    for (int i = 0; i < machine_count; ++i) {
        idle.per_machine[i] = horizon[i] - busy[i];
        idle.total += idle.per_machine[i];
    }
    return idle;
}

}  // namespace flowsched
