#include "flowsched/scheduler.hpp"

#include <limits>
#include <stdexcept>

#include "flowsched/errors.hpp"

namespace flowsched {

Variant variant_from_name(std::string_view name) {
    if (name == "ect" || name == "3") return Variant::Ect;
    if (name == "est" || name == "4") return Variant::Est;
    if (name == "spt" || name == "5") return Variant::Spt;
    throw std::invalid_argument("unknown variant '" + std::string(name) +
                                "' (expected ect|est|spt or 3|4|5)");
}

std::string_view variant_name(Variant variant) {
    switch (variant) {
        case Variant::Ect: return "ect";
        case Variant::Est: return "est";
        case Variant::Spt: return "spt";
    }
    return "?";
}

SchedulerState::SchedulerState(const Instance& instance)
    : instance_(&instance),
      timelines_(static_cast<std::size_t>(instance.matrix.machines())),
      progress_(static_cast<std::size_t>(instance.job_count())) {}

Time SchedulerState::block_ready(int job) const {
    if (job < 1 || job > static_cast<int>(progress_.size()))
        throw std::out_of_range("block_ready: job index " + std::to_string(job));
    return progress_[job - 1].ready;
}

MachineChoice SchedulerState::choose_ect(int task_type, Time ready) const {
    const TimeMatrix& matrix = instance_->matrix;
    MachineChoice best;
    Time best_completion = std::numeric_limits<Time>::max();
    for (int i = 1; i <= matrix.machines(); ++i) {
        Time dur = matrix.at(i, task_type);
        if (dur <= 0) continue;
        Time d = timelines_[i - 1].earliest_fit(ready, dur);
        if (d + dur < best_completion) {
            best_completion = d + dur;
            best = {i, d};
        }
    }
    if (best.machine == 0) throw NoCapableMachineError(task_type);
    return best;
}

MachineChoice SchedulerState::choose_est(int task_type, Time ready) const {
    const TimeMatrix& matrix = instance_->matrix;
    MachineChoice best;
    Time best_start = std::numeric_limits<Time>::max();
    for (int i = 1; i <= matrix.machines(); ++i) {
        Time dur = matrix.at(i, task_type);
        if (dur <= 0) continue;
        Time d = timelines_[i - 1].earliest_fit(ready, dur);
        if (d < best_start) {
            best_start = d;
            best = {i, d};
        }
    }
    if (best.machine == 0) throw NoCapableMachineError(task_type);
    return best;
}

MachineChoice SchedulerState::choose_spt(int task_type, Time ready) const {
    const TimeMatrix& matrix = instance_->matrix;
    int best_machine = 0;
    Time best_dur = std::numeric_limits<Time>::max();
    for (int i = 1; i <= matrix.machines(); ++i) {
        Time dur = matrix.at(i, task_type);
        if (dur > 0 && dur < best_dur) {
            best_dur = dur;
            best_machine = i;
        }
    }
    if (best_machine == 0) throw NoCapableMachineError(task_type);
    return {best_machine, timelines_[best_machine - 1].earliest_fit(ready, best_dur)};
}

MachineChoice SchedulerState::choose(Variant variant, int task_type, Time ready) const {
    switch (variant) {
        case Variant::Ect: return choose_ect(task_type, ready);
        case Variant::Est: return choose_est(task_type, ready);
        case Variant::Spt: return choose_spt(task_type, ready);
    }
    throw std::logic_error("unreachable variant");
}

Assignment SchedulerState::schedule_task(const TaskRef& ref, Variant variant) {
    if (ref.job < 1 || ref.job > static_cast<int>(progress_.size()))
        throw std::invalid_argument("schedule_task: job index " + std::to_string(ref.job));
    JobProgress& prog = progress_[ref.job - 1];
    const Block& block = instance_->block_at(ref.job, ref.block);

    if (ref.block == prog.current_block + 1) {
        if (prog.tasks_done != instance_->block_at(ref.job, prog.current_block).length())
            throw std::invalid_argument("schedule_task: block advanced before " +
                                        TaskRef{ref.job, prog.current_block, 0}.to_string() +
                                        " completed all arrivals");
        prog.current_block = ref.block;
        prog.ready = prog.block_max_end;
        prog.block_max_end = 0;
        prog.tasks_done = 0;
    } else if (ref.block != prog.current_block) {
        throw std::invalid_argument("schedule_task: out-of-order block for " + ref.to_string());
    }
    if (ref.pos != prog.tasks_done + 1 || ref.pos > block.length())
        throw std::invalid_argument("schedule_task: out-of-order position for " + ref.to_string());

    const int task_type = block.task_types[ref.pos - 1];
    MachineChoice chosen;
    try {
        chosen = choose(variant, task_type, prog.ready);
    } catch (const NoCapableMachineError&) {
        throw NoCapableMachineError(task_type, "needed by " + ref.to_string());
    }

    const Time dur = instance_->matrix.at(chosen.machine, task_type);
    timelines_[chosen.machine - 1].reserve(chosen.start, dur);

    Assignment a;
    a.task = ref;
    a.task_type = task_type;
    a.machine = chosen.machine;
    a.start = chosen.start;
    a.end = chosen.start + dur;

    prog.tasks_done += 1;
    if (a.end > prog.block_max_end) prog.block_max_end = a.end;
    return a;
}

const MachineTimeline& SchedulerState::timeline(int machine) const {
    if (machine < 1 || machine > static_cast<int>(timelines_.size()))
        throw std::out_of_range("timeline: machine index " + std::to_string(machine));
    return timelines_[machine - 1];
}

std::vector<TaskRef> enumerate_stream(const Instance& instance) {
    std::vector<TaskRef> stream;
    stream.reserve(static_cast<std::size_t>(instance.total_tasks()));
    for (int l = 1; l <= instance.job_count(); ++l) {
        const Job& job = instance.jobs[l - 1];
        for (int phi = 1; phi <= job.block_count(); ++phi)
            for (int k = 1; k <= job.blocks[phi - 1].length(); ++k)
                stream.push_back({l, phi, k});
    }
    return stream;
}

Schedule run_stream(const Instance& instance, Variant variant) {
    SchedulerState state(instance);
    Schedule schedule;
    schedule.assignments.reserve(static_cast<std::size_t>(instance.total_tasks()));
    for (const TaskRef& ref : enumerate_stream(instance)) {
        Assignment a = state.schedule_task(ref, variant);
        if (a.end > schedule.makespan) schedule.makespan = a.end;
        schedule.assignments.push_back(a);
    }
    return schedule;
}

LowerBounds makespan_lower_bounds(const Instance& instance) {
    const TimeMatrix& matrix = instance.matrix;
    LowerBounds bounds;
    Time total_min = 0;
    for (const Job& job : instance.jobs) {
        Time path = 0;
        for (const Block& block : job.blocks) {
            Time block_max = 0;
            for (int tau : block.task_types) {
                Time best = std::numeric_limits<Time>::max();
                for (int i = 1; i <= matrix.machines(); ++i) {
                    Time dur = matrix.at(i, tau);
                    if (dur > 0 && dur < best) best = dur;
                }
                if (best == std::numeric_limits<Time>::max())
                    throw NoCapableMachineError(tau);
                total_min += best;
                if (best > block_max) block_max = best;
            }
            path += block_max;
        }
        if (path > bounds.path_bound) bounds.path_bound = path;
    }
    const Time m = matrix.machines();
    bounds.load_bound = (total_min + m - 1) / m;
    return bounds;
}

}  // namespace flowsched
