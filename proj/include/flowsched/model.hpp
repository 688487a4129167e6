#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace flowsched {

// Durations and timestamps are integral time units.
using Time = std::int64_t;

// m x t table of machine-specific durations. Entry > 0: machine solves the
// type in that many time units; entry < 0: machine is incapable; 0 forbidden.
// All public indices are 1-based (machine 1..m, type 1..t).
class TimeMatrix {
public:
    TimeMatrix() = default;
    TimeMatrix(int machines, int types, std::vector<Time> row_major_entries);

    int machines() const { return machines_; }
    int types() const { return types_; }

    Time at(int machine, int type) const;
    bool capable(int machine, int type) const { return at(machine, type) > 0; }

    bool operator==(const TimeMatrix&) const = default;

private:
    int machines_ = 0;
    int types_ = 0;
    std::vector<Time> entries_;  // row-major, machines_ * types_
};

// One block: tasks that may run in parallel. Stores the type index of each
// task, i.e. the tau at coordinate (job, block, pos).
struct Block {
    std::vector<int> task_types;

    int length() const { return static_cast<int>(task_types.size()); }
    bool operator==(const Block&) const = default;
};

// Ordered blocks; block phi+1 may start only after all of block phi finished.
struct Job {
    std::vector<Block> blocks;

    int block_count() const { return static_cast<int>(blocks.size()); }
    bool operator==(const Job&) const = default;
};

// 1-based coordinate of a task: job, block within job, position within block.
struct TaskRef {
    int job = 0;
    int block = 0;
    int pos = 0;

    auto operator<=>(const TaskRef&) const = default;
    std::string to_string() const;
};

struct Instance {
    TimeMatrix matrix;
    std::vector<Job> jobs;

    int job_count() const { return static_cast<int>(jobs.size()); }
    const Job& job_at(int job) const;
    const Block& block_at(int job, int block) const;
    // Type tau at the given coordinate; throws std::out_of_range if absent.
    int task_type_at(const TaskRef& ref) const;
    long long total_tasks() const;

    bool operator==(const Instance&) const = default;
};

// Total number of tasks over all blocks of the job.
int job_size(const Job& job);

// Machines i with I[i][type] > 0, ascending. Throws std::out_of_range on a
// type outside 1..t.
std::vector<int> capable_machines(const TimeMatrix& matrix, int type);

enum class InstanceViolationKind {
    ZeroEntry,       // I[i][tau] == 0
    UnsolvableType,  // referenced type with no capable machine
    BadTaskIndex,    // task type outside 1..t
    EmptyBlock,
    EmptyJob,
    EmptyInstance,   // no jobs
    EmptyMatrix,     // m == 0 or t == 0
};

const char* to_string(InstanceViolationKind kind);

struct InstanceViolation {
    InstanceViolationKind kind;
    int machine = 0;
    int task_type = 0;
    int job = 0;
    int block = 0;
    int pos = 0;

    std::string to_string() const;
};

struct ValidationResult {
    std::vector<InstanceViolation> violations;
    std::vector<std::string> warnings;

    bool ok() const { return violations.empty(); }
};

// Never throws on bad content; everything is reported as a violation.
// Unreferenced all-negative matrix columns yield a warning, not a violation.
ValidationResult validate_instance(const Instance& instance);

}  // namespace flowsched
