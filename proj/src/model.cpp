#include "flowsched/model.hpp"

#include <set>
#include <stdexcept>

namespace flowsched {

TimeMatrix::TimeMatrix(int machines, int types, std::vector<Time> row_major_entries)
    : machines_(machines), types_(types), entries_(std::move(row_major_entries)) {
    if (machines < 0 || types < 0)
        throw std::invalid_argument("TimeMatrix: negative dimension");
    if (entries_.size() != static_cast<std::size_t>(machines) * static_cast<std::size_t>(types))
        throw std::invalid_argument("TimeMatrix: entry count does not match dimensions");
}

Time TimeMatrix::at(int machine, int type) const {
    if (machine < 1 || machine > machines_)
        throw std::out_of_range("TimeMatrix: machine index " + std::to_string(machine));
    if (type < 1 || type > types_)
        throw std::out_of_range("TimeMatrix: type index " + std::to_string(type));
    return entries_[static_cast<std::size_t>(machine - 1) * types_ + (type - 1)];
}

std::string TaskRef::to_string() const {
    return "J" + std::to_string(job) + "." + std::to_string(block) + "." + std::to_string(pos);
}

const Job& Instance::job_at(int job) const {
    if (job < 1 || job > job_count())
        throw std::out_of_range("Instance: job index " + std::to_string(job));
    return jobs[job - 1];
}

const Block& Instance::block_at(int job, int block) const {
    const Job& j = job_at(job);
    if (block < 1 || block > j.block_count())
        throw std::out_of_range("Instance: block index " + std::to_string(block));
    return j.blocks[block - 1];
}

int Instance::task_type_at(const TaskRef& ref) const {
    const Block& b = block_at(ref.job, ref.block);
    if (ref.pos < 1 || ref.pos > b.length())
        throw std::out_of_range("Instance: task position " + std::to_string(ref.pos));
    return b.task_types[ref.pos - 1];
}

long long Instance::total_tasks() const {
    long long n = 0;
    for (const Job& job : jobs) n += job_size(job);
    return n;
}

int job_size(const Job& job) {
    int n = 0;
    for (const Block& b : job.blocks) n += b.length();
    return n;
}

std::vector<int> capable_machines(const TimeMatrix& matrix, int type) {
    if (type < 1 || type > matrix.types())
        throw std::out_of_range("capable_machines: type index " + std::to_string(type));
    std::vector<int> result;
    for (int i = 1; i <= matrix.machines(); ++i)
        if (matrix.at(i, type) > 0) result.push_back(i);
    return result;
}

const char* to_string(InstanceViolationKind kind) {
    switch (kind) {
        case InstanceViolationKind::ZeroEntry: return "ZERO_ENTRY";
        case InstanceViolationKind::UnsolvableType: return "UNSOLVABLE_TYPE";
        case InstanceViolationKind::BadTaskIndex: return "BAD_TASK_INDEX";
        case InstanceViolationKind::EmptyBlock: return "EMPTY_BLOCK";
        case InstanceViolationKind::EmptyJob: return "EMPTY_JOB";
        case InstanceViolationKind::EmptyInstance: return "EMPTY_INSTANCE";
        case InstanceViolationKind::EmptyMatrix: return "EMPTY_MATRIX";
    }
    return "UNKNOWN";
}

std::string InstanceViolation::to_string() const {
    std::string s = flowsched::to_string(kind);
    switch (kind) {
        case InstanceViolationKind::ZeroEntry:
            return s + "(machine " + std::to_string(machine) + ", type " +
                   std::to_string(task_type) + ")";
        case InstanceViolationKind::UnsolvableType:
            return s + "(type " + std::to_string(task_type) + ")";
        case InstanceViolationKind::BadTaskIndex:
            return s + "(job " + std::to_string(job) + ", block " + std::to_string(block) +
                   ", pos " + std::to_string(pos) + ": type " + std::to_string(task_type) + ")";
        case InstanceViolationKind::EmptyBlock:
            return s + "(job " + std::to_string(job) + ", block " + std::to_string(block) + ")";
        case InstanceViolationKind::EmptyJob:
            return s + "(job " + std::to_string(job) + ")";
        default:
            return s;
    }
}

ValidationResult validate_instance(const Instance& instance) {
    ValidationResult result;
    const TimeMatrix& matrix = instance.matrix;

    if (matrix.machines() < 1 || matrix.types() < 1) {
        result.violations.push_back({InstanceViolationKind::EmptyMatrix});
        return result;  // nothing else is meaningful
    }

    for (int i = 1; i <= matrix.machines(); ++i)
        for (int tau = 1; tau <= matrix.types(); ++tau)
            if (matrix.at(i, tau) == 0) {
                InstanceViolation v{InstanceViolationKind::ZeroEntry};
                v.machine = i;
                v.task_type = tau;
                result.violations.push_back(v);
            }

    if (instance.jobs.empty())
        result.violations.push_back({InstanceViolationKind::EmptyInstance});

    std::set<int> referenced;
    for (int l = 1; l <= instance.job_count(); ++l) {
        const Job& job = instance.jobs[l - 1];
        if (job.blocks.empty()) {
            InstanceViolation v{InstanceViolationKind::EmptyJob};
            v.job = l;
            result.violations.push_back(v);
            continue;
        }
        for (int phi = 1; phi <= job.block_count(); ++phi) {
            const Block& block = job.blocks[phi - 1];
            if (block.task_types.empty()) {
                InstanceViolation v{InstanceViolationKind::EmptyBlock};
                v.job = l;
                v.block = phi;
                result.violations.push_back(v);
                continue;
            }
            for (int k = 1; k <= block.length(); ++k) {
                int tau = block.task_types[k - 1];
                if (tau < 1 || tau > matrix.types()) {
                    InstanceViolation v{InstanceViolationKind::BadTaskIndex};
                    v.job = l;
                    v.block = phi;
                    v.pos = k;
                    v.task_type = tau;
                    result.violations.push_back(v);
                } else {
                    referenced.insert(tau);
                }
            }
        }
    }

    // Unsolvable types: an error only when some job actually needs the type.
    for (int tau = 1; tau <= matrix.types(); ++tau) {
        bool solvable = false;
        for (int i = 1; i <= matrix.machines() && !solvable; ++i)
            if (matrix.at(i, tau) > 0) solvable = true;
        if (solvable) continue;
        if (referenced.count(tau)) {
            InstanceViolation v{InstanceViolationKind::UnsolvableType};
            v.task_type = tau;
            result.violations.push_back(v);
        } else {
            result.warnings.push_back("type " + std::to_string(tau) +
                                      " has no capable machine (unreferenced)");
        }
    }

    return result;
}

}  // namespace flowsched
