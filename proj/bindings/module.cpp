#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "flowsched/bench.hpp"
#include "flowsched/errors.hpp"
#include "flowsched/generator.hpp"
#include "flowsched/io.hpp"
#include "flowsched/model.hpp"
#include "flowsched/scheduler.hpp"
#include "flowsched/verify.hpp"

namespace py = pybind11;
using namespace flowsched;

namespace {

Instance instance_from_lists(const std::vector<std::vector<Time>>& matrix_rows,
                             const std::vector<std::vector<std::vector<int>>>& jobs) {
    Instance instance;
    const int machines = static_cast<int>(matrix_rows.size());
    const int types = machines == 0 ? 0 : static_cast<int>(matrix_rows.front().size());
    std::vector<Time> entries;
    entries.reserve(static_cast<std::size_t>(machines) * types);
    for (const auto& row : matrix_rows) {
        if (static_cast<int>(row.size()) != types)
            throw std::invalid_argument("matrix rows must all have the same length");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    instance.matrix = TimeMatrix(machines, types, std::move(entries));
    for (const auto& job_blocks : jobs) {
        Job job;
        for (const auto& block_types : job_blocks) job.blocks.push_back(Block{block_types});
        instance.jobs.push_back(std::move(job));
    }
    return instance;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Online greedy scheduling of block-structured jobs on unrelated machines";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ParseError>(m, "DatasetParseError");
    py::register_exception<OverlapError>(m, "OverlapError");
    py::register_exception<NoCapableMachineError>(m, "NoCapableMachineError");
    py::register_exception<TooLargeError>(m, "TooLargeError");
    py::register_exception<ScaleTooSmallError>(m, "ScaleTooSmallError");

    py::class_<TimeMatrix>(m, "TimeMatrix")
        .def(py::init<int, int, std::vector<Time>>(), py::arg("machines"), py::arg("types"),
             py::arg("row_major_entries"))
        .def_property_readonly("machines", &TimeMatrix::machines)
        .def_property_readonly("types", &TimeMatrix::types)
        .def("at", &TimeMatrix::at, py::arg("machine"), py::arg("type"))
        .def("capable", &TimeMatrix::capable, py::arg("machine"), py::arg("type"))
        .def("__eq__", [](const TimeMatrix& a, const TimeMatrix& b) { return a == b; });

    py::class_<Block>(m, "Block")
        .def(py::init([](std::vector<int> types) { return Block{std::move(types)}; }),
             py::arg("task_types"))
        .def_readwrite("task_types", &Block::task_types)
        .def_property_readonly("length", &Block::length);

    py::class_<Job>(m, "Job")
        .def(py::init([](std::vector<Block> blocks) { return Job{std::move(blocks)}; }),
             py::arg("blocks"))
        .def_readwrite("blocks", &Job::blocks);

    py::class_<TaskRef>(m, "TaskRef")
        .def(py::init([](int job, int block, int pos) { return TaskRef{job, block, pos}; }),
             py::arg("job"), py::arg("block"), py::arg("pos"))
        .def_readwrite("job", &TaskRef::job)
        .def_readwrite("block", &TaskRef::block)
        .def_readwrite("pos", &TaskRef::pos)
        .def("__eq__", [](const TaskRef& a, const TaskRef& b) { return a == b; })
        .def("__repr__", &TaskRef::to_string);

    py::class_<Instance>(m, "Instance")
        .def(py::init(&instance_from_lists), py::arg("matrix_rows"), py::arg("jobs"))
        .def_readwrite("matrix", &Instance::matrix)
        .def_readwrite("jobs", &Instance::jobs)
        .def_property_readonly("job_count", &Instance::job_count)
        .def_property_readonly("total_tasks", &Instance::total_tasks)
        .def("task_type_at", &Instance::task_type_at, py::arg("ref"))
        .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; });

    py::class_<ValidationResult>(m, "ValidationResult")
        .def_property_readonly("ok", &ValidationResult::ok)
        .def_property_readonly("violations",
                               [](const ValidationResult& r) {
                                   std::vector<std::string> out;
                                   for (const auto& v : r.violations)
                                       out.push_back(v.to_string());
                                   return out;
                               })
        .def_readonly("warnings", &ValidationResult::warnings);

    py::enum_<Variant>(m, "Variant")
        .value("ECT", Variant::Ect)
        .value("EST", Variant::Est)
        .value("SPT", Variant::Spt);

    py::class_<Assignment>(m, "Assignment")
        .def_readonly("task", &Assignment::task)
        .def_readonly("task_type", &Assignment::task_type)
        .def_readonly("machine", &Assignment::machine)
        .def_readonly("start", &Assignment::start)
        .def_readonly("end", &Assignment::end)
        .def("__repr__", [](const Assignment& a) {
            std::ostringstream out;
            out << a.task.to_string() << " type " << a.task_type << " M" << a.machine << " ["
                << a.start << "," << a.end << ")";
            return out.str();
        });

    py::class_<Schedule>(m, "Schedule")
        .def_readonly("assignments", &Schedule::assignments)
        .def_readonly("makespan", &Schedule::makespan);

    py::class_<LowerBounds>(m, "LowerBounds")
        .def_readonly("path_bound", &LowerBounds::path_bound)
        .def_readonly("load_bound", &LowerBounds::load_bound)
        .def_property_readonly("combined", &LowerBounds::combined);

    py::class_<ViolationReport>(m, "ViolationReport")
        .def_property_readonly("ok", &ViolationReport::ok)
        .def_property_readonly("violations", [](const ViolationReport& r) {
            std::vector<std::string> out;
            for (const auto& v : r.violations) out.push_back(v.to_string());
            return out;
        });

    py::class_<OracleLimits>(m, "OracleLimits")
        .def(py::init([](int max_tasks, int max_machines) {
                 return OracleLimits{max_tasks, max_machines};
             }),
             py::arg("max_tasks") = 7, py::arg("max_machines") = 3)
        .def_readwrite("max_tasks", &OracleLimits::max_tasks)
        .def_readwrite("max_machines", &OracleLimits::max_machines);

    py::class_<OptResult>(m, "OptResult")
        .def_readonly("opt_makespan", &OptResult::opt_makespan)
        .def_readonly("witness", &OptResult::witness)
        .def_readonly("explored", &OptResult::explored);

    py::class_<IdleTimes>(m, "IdleTimes")
        .def_readonly("total", &IdleTimes::total)
        .def_readonly("per_machine", &IdleTimes::per_machine);

    py::class_<GenConfig>(m, "GenConfig")
        .def(py::init())
        .def_readwrite("types", &GenConfig::types)
        .def_readwrite("machines", &GenConfig::machines)
        .def_readwrite("jobs", &GenConfig::jobs)
        .def_readwrite("dur_lo", &GenConfig::dur_lo)
        .def_readwrite("dur_hi", &GenConfig::dur_hi)
        .def_readwrite("blocks_lo", &GenConfig::blocks_lo)
        .def_readwrite("blocks_hi", &GenConfig::blocks_hi)
        .def_readwrite("tasks_lo", &GenConfig::tasks_lo)
        .def_readwrite("tasks_hi", &GenConfig::tasks_hi)
        .def_readwrite("incapable_probability", &GenConfig::incapable_probability)
        .def_readwrite("seed", &GenConfig::seed);

    py::class_<SplitMix64>(m, "SplitMix64")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("next", &SplitMix64::next)
        .def("next_uniform", &SplitMix64::next_uniform, py::arg("lo"), py::arg("hi"));

    m.def("validate_instance", &validate_instance, py::arg("instance"));
    m.def("capable_machines", &capable_machines, py::arg("matrix"), py::arg("type"));
    m.def("job_size", &job_size, py::arg("job"));
    m.def("variant_from_name", &variant_from_name, py::arg("name"));
    m.def("enumerate_stream", &enumerate_stream, py::arg("instance"));
    m.def("run_stream", &run_stream, py::arg("instance"), py::arg("variant"),
          "Schedule the whole task stream under one greedy variant.");
    m.def("makespan_lower_bounds", &makespan_lower_bounds, py::arg("instance"));
    m.def("check_schedule", &check_schedule, py::arg("instance"), py::arg("schedule"));
    m.def("brute_force_opt", &brute_force_opt, py::arg("instance"),
          py::arg("limits") = OracleLimits{});
    m.def("idle_time", &idle_time, py::arg("schedule"), py::arg("machine_count"));
    m.def("generate", &generate, py::arg("config"));
    m.def(
        "parse_instance",
        [](const std::string& text) {
            ParsedInstance parsed = parse_instance(text);
            return py::make_tuple(parsed.instance, parsed.warnings);
        },
        py::arg("text"), "Returns (instance, warnings).");
    m.def("write_instance", &write_instance, py::arg("instance"));
    m.def("write_schedule_csv", &write_schedule_csv, py::arg("schedule"));
    m.def("parse_schedule_csv", [](const std::string& text) { return parse_schedule_csv(text); },
          py::arg("text"));
    m.def(
        "render_gantt",
        [](const Instance& instance, const Schedule& schedule, const std::string& format,
           int scale, int max_width) {
            GanttOptions options;
            options.format = format == "svg" ? GanttFormat::Svg : GanttFormat::Text;
            options.scale = scale;
            options.max_width = max_width;
            return render_gantt(instance, schedule, options);
        },
        py::arg("instance"), py::arg("schedule"), py::arg("format") = "text",
        py::arg("scale") = 1, py::arg("max_width") = 200);
}
