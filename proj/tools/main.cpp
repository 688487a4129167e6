#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flowsched/bench.hpp"
#include "flowsched/errors.hpp"
#include "flowsched/generator.hpp"
#include "flowsched/io.hpp"
#include "flowsched/model.hpp"
#include "flowsched/scheduler.hpp"
#include "flowsched/verify.hpp"

namespace {

using namespace flowsched;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;  // validation failures, unsolvable types, ...
constexpr int kExitUsage = 2;   // bad flags, unreadable/unparseable input

struct UsageFailure {
    std::string message;
};
struct DomainFailure {
    std::string message;
};

std::string slurp(const std::string& path) {
    try {
        return read_file(path);
    } catch (const Error& e) {
        throw UsageFailure{e.what()};
    }
}

ParsedInstance load_instance(const std::string& path) {
    const std::string text = slurp(path);
    try {
        ParsedInstance parsed = parse_instance(text);
        for (const std::string& warning : parsed.warnings)
            std::cerr << "warning: " << path << ": " << warning << "\n";
        return parsed;
    } catch (const ParseError& e) {
        throw UsageFailure{path + ": " + e.what()};
    }
}

Instance load_valid_instance(const std::string& path) {
    ParsedInstance parsed = load_instance(path);
    ValidationResult validation = validate_instance(parsed.instance);
    if (!validation.ok()) {
        std::string message = path + ": invalid instance";
        for (const InstanceViolation& v : validation.violations)
            message += "\n  " + v.to_string();
        throw DomainFailure{message};
    }
    for (const std::string& warning : validation.warnings)
        std::cerr << "warning: " << path << ": " << warning << "\n";
    return std::move(parsed.instance);
}

void save(const std::string& path, std::string_view content) {
    try {
        write_file(path, content);
    } catch (const Error& e) {
        throw UsageFailure{e.what()};
    }
}

ParamRange parse_range(const std::string& text, const char* flag) {
    ParamRange range;
    try {
        const std::size_t dots = text.find("..");
        if (dots == std::string::npos) {
            range.lo = range.hi = std::stoll(text);
        } else {
            range.lo = std::stoll(text.substr(0, dots));
            range.hi = std::stoll(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw UsageFailure{std::string(flag) + ": expected N or LO..HI, got '" + text + "'"};
    }
    return range;
}

GanttFormat gantt_format_for(const std::string& path_or_name) {
    if (path_or_name.size() >= 4 &&
        path_or_name.compare(path_or_name.size() - 4, 4, ".svg") == 0)
        return GanttFormat::Svg;
    return GanttFormat::Text;
}

int env_threads() {
    const char* raw = std::getenv("FLOWSCHED_THREADS");
    if (!raw || !*raw) return 0;
    try {
        return std::max(0, std::stoi(raw));
    } catch (const std::exception&) {
        return 0;
    }
}

struct SolveArgs {
    std::string variant;
    std::string input;
    std::string schedule_out;
    std::string gantt_out;
    int gantt_scale = 1;
    int gantt_width = 200;
    bool timing = false;
};

int cmd_solve(const SolveArgs& args) {
    const Instance instance = load_valid_instance(args.input);
    const Variant variant = variant_from_name(args.variant);

    const auto begin = std::chrono::steady_clock::now();
    Schedule schedule;
    try {
        schedule = run_stream(instance, variant);
    } catch (const NoCapableMachineError& e) {
        throw DomainFailure{e.what()};
    }
    const auto end = std::chrono::steady_clock::now();

    std::cout << "makespan " << schedule.makespan << "\n";
    const LowerBounds bounds = makespan_lower_bounds(instance);
    const IdleTimes idle = idle_time(schedule, instance.matrix.machines());
    std::cout << "variant " << variant_name(variant) << "\n"
              << "tasks " << schedule.assignments.size() << "\n"
              << "machines " << instance.matrix.machines() << "\n"
              << "idle_total " << idle.total << "\n"
              << "path_bound " << bounds.path_bound << "\n"
              << "load_bound " << bounds.load_bound << "\n";
    if (args.timing)
        std::cerr << "wall_ms "
                  << std::chrono::duration<double, std::milli>(end - begin).count() << "\n";

    if (!args.schedule_out.empty()) save(args.schedule_out, write_schedule_csv(schedule));
    if (!args.gantt_out.empty()) {
        GanttOptions options;
        options.format = gantt_format_for(args.gantt_out);
        options.scale = args.gantt_scale;
        options.max_width = args.gantt_width;
        try {
            save(args.gantt_out, render_gantt(instance, schedule, options));
        } catch (const ScaleTooSmallError& e) {
            throw DomainFailure{e.what()};
        }
    }
    return kExitOk;
}

struct GenerateArgs {
    int t = 0;
    int m = 0;
    int L = 0;
    Time dur_lo = 1;
    Time dur_hi = 100;
    std::string blocks = "1";
    std::string tasks = "1";
    double incapable = 0.0;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_generate(const GenerateArgs& args) {
    GenConfig config;
    config.types = args.t;
    config.machines = args.m;
    config.jobs = args.L;
    config.dur_lo = args.dur_lo;
    config.dur_hi = args.dur_hi;
    const ParamRange blocks = parse_range(args.blocks, "--f");
    const ParamRange tasks = parse_range(args.tasks, "--k");
    config.blocks_lo = static_cast<int>(blocks.lo);
    config.blocks_hi = static_cast<int>(blocks.hi);
    config.tasks_lo = static_cast<int>(tasks.lo);
    config.tasks_hi = static_cast<int>(tasks.hi);
    config.incapable_probability = args.incapable;
    config.seed = args.seed;

    Instance instance;
    try {
        instance = generate(config);
    } catch (const std::invalid_argument& e) {
        throw UsageFailure{e.what()};
    }
    save(args.out, write_instance(instance));
    std::cout << "generated t=" << config.types << " m=" << config.machines
              << " L=" << config.jobs << " tasks=" << instance.total_tasks() << " seed="
              << config.seed << " -> " << args.out << "\n";
    return kExitOk;
}

struct BenchArgs {
    int n = 0;
    std::string variants = "ect,est,spt";
    std::string baseline = "ect";
    std::uint64_t seed = 1;
    std::string out;
    bool oracle = false;
    std::string t = "1..20";
    std::string m = "1..20";
    std::string L = "1..50";
    std::string k = "1..10";
    std::string dur = "1..100";
    std::string blocks;       // general shape when given
    std::string block_tasks;  // tasks per block for the general shape
    int threads = -1;
};

int cmd_bench(const BenchArgs& args) {
    BenchConfig config;
    config.instance_count = args.n;
    config.base_seed = args.seed;
    config.oracle = args.oracle;
    config.types = parse_range(args.t, "--t");
    config.machines = parse_range(args.m, "--m");
    config.jobs = parse_range(args.L, "--L");
    config.tasks_per_job = parse_range(args.k, "--k");
    config.durations = parse_range(args.dur, "--dur");
    if (!args.blocks.empty() || !args.block_tasks.empty()) {
        config.single_task_blocks = false;
        config.blocks_per_job = parse_range(args.blocks.empty() ? "1" : args.blocks, "--blocks");
        config.tasks_per_block =
            parse_range(args.block_tasks.empty() ? "1" : args.block_tasks, "--block-tasks");
    }
    config.threads = args.threads >= 0 ? args.threads : env_threads();

    config.variants.clear();
    std::string token;
    std::istringstream stream(args.variants);
    while (std::getline(stream, token, ',')) {
        if (token.empty()) continue;
        try {
            config.variants.push_back(variant_from_name(token));
        } catch (const std::invalid_argument& e) {
            throw UsageFailure{e.what()};
        }
    }
    try {
        config.baseline = variant_from_name(args.baseline);
    } catch (const std::invalid_argument& e) {
        throw UsageFailure{e.what()};
    }

    BenchReport report;
    try {
        report = run_bench(config);
    } catch (const std::invalid_argument& e) {
        throw UsageFailure{e.what()};
    } catch (const Error& e) {
        throw DomainFailure{e.what()};
    }

    // Deterministic report on stdout; timing summary on stderr.
    std::cout << report_render(report, ReportFormat::Text, /*with_timings=*/false);
    for (const VariantAggregate& agg : report.aggregates)
        std::cerr << "timing " << variant_name(agg.variant) << " wall_ms_total="
                  << agg.wall_ms_total << "\n";
    if (!args.out.empty()) save(args.out, report_render(report, ReportFormat::Csv));
    return kExitOk;
}

struct OptArgs {
    std::string input;
    int max_tasks = 7;
    int max_machines = 3;
};

int cmd_opt(const OptArgs& args) {
    const Instance instance = load_valid_instance(args.input);
    OracleLimits limits;
    limits.max_tasks = args.max_tasks;
    limits.max_machines = args.max_machines;
    OptResult result;
    try {
        result = brute_force_opt(instance, limits);
    } catch (const Error& e) {
        throw DomainFailure{e.what()};
    }
    std::cout << "opt " << result.opt_makespan << "\n"
              << "explored " << result.explored << "\n";
    return kExitOk;
}

struct ValidateArgs {
    std::string input;
    std::string schedule;
};

int cmd_validate(const ValidateArgs& args) {
    ParsedInstance parsed = load_instance(args.input);
    ValidationResult validation = validate_instance(parsed.instance);
    for (const std::string& warning : validation.warnings)
        std::cerr << "warning: " << warning << "\n";
    if (!validation.ok()) {
        for (const InstanceViolation& v : validation.violations)
            std::cout << v.to_string() << "\n";
        return kExitDomain;
    }
    if (args.schedule.empty()) {
        std::cout << "ok\n";
        return kExitOk;
    }

    Schedule schedule;
    try {
        schedule = parse_schedule_csv(slurp(args.schedule));
    } catch (const ParseError& e) {
        throw UsageFailure{args.schedule + ": " + e.what()};
    }
    const ViolationReport report = check_schedule(parsed.instance, schedule);
    if (!report.ok()) {
        for (const ScheduleViolation& v : report.violations)
            std::cout << v.to_string() << "\n";
        return kExitDomain;
    }
    std::cout << "ok\n";
    return kExitOk;
}

struct GanttArgs {
    std::string input;
    std::string schedule;
    std::string format = "text";
    std::string out;
    int scale = 1;
    int width = 200;
};

int cmd_gantt(const GanttArgs& args) {
    const Instance instance = load_valid_instance(args.input);
    Schedule schedule;
    try {
        schedule = parse_schedule_csv(slurp(args.schedule));
    } catch (const ParseError& e) {
        throw UsageFailure{args.schedule + ": " + e.what()};
    }
    GanttOptions options;
    options.format = args.format == "svg" ? GanttFormat::Svg : GanttFormat::Text;
    options.scale = args.scale;
    options.max_width = args.width;
    std::string rendered;
    try {
        rendered = render_gantt(instance, schedule, options);
    } catch (const ScaleTooSmallError& e) {
        throw DomainFailure{e.what()};
    }
    if (args.out.empty())
        std::cout << rendered;
    else
        save(args.out, rendered);
    return kExitOk;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"flowsched: online greedy scheduling of block-structured jobs on unrelated machines"};
    app.require_subcommand(1);

    SolveArgs solve;
    CLI::App* solve_cmd = app.add_subcommand("solve", "schedule a dataset with one variant");
    solve_cmd->add_option("--variant", solve.variant, "ect|est|spt (aliases 3|4|5)")
        ->required()
        ->check(CLI::IsMember({"ect", "est", "spt", "3", "4", "5"}));
    solve_cmd->add_option("--input", solve.input, "dataset file")->required();
    solve_cmd->add_option("--schedule", solve.schedule_out, "write schedule CSV here");
    solve_cmd->add_option("--gantt", solve.gantt_out, "write Gantt chart (.svg or text)");
    solve_cmd->add_option("--gantt-scale", solve.gantt_scale, "time units per text cell");
    solve_cmd->add_option("--gantt-width", solve.gantt_width, "max text cells per row");
    solve_cmd->add_flag("--time", solve.timing, "print wall time to stderr");

    GenerateArgs gen;
    CLI::App* gen_cmd = app.add_subcommand("generate", "write a reproducible random dataset");
    gen_cmd->add_option("--t", gen.t, "task-type count")->required();
    gen_cmd->add_option("--m", gen.m, "machine count")->required();
    gen_cmd->add_option("--L", gen.L, "job count")->required();
    gen_cmd->add_option("--dur-lo", gen.dur_lo, "min duration");
    gen_cmd->add_option("--dur-hi", gen.dur_hi, "max duration");
    gen_cmd->add_option("--f", gen.blocks, "blocks per job, N or LO..HI");
    gen_cmd->add_option("--k", gen.tasks, "tasks per block, N or LO..HI");
    gen_cmd->add_option("--p", gen.incapable, "incapable-entry probability in [0,1)");
    gen_cmd->add_option("--seed", gen.seed, "RNG seed");
    gen_cmd->add_option("--out", gen.out, "output dataset file")->required();

    BenchArgs bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "run the variant comparison experiment");
    bench_cmd->add_option("--n", bench.n, "instance count")->required();
    bench_cmd->add_option("--variants", bench.variants, "comma list of ect,est,spt");
    bench_cmd->add_option("--baseline", bench.baseline, "ratio baseline variant");
    bench_cmd->add_option("--seed", bench.seed, "base seed; instance i uses seed+i");
    bench_cmd->add_option("--out", bench.out, "write per-instance CSV report here");
    bench_cmd->add_flag("--oracle", bench.oracle, "also compute OPT (tiny configs only)");
    bench_cmd->add_option("--t", bench.t, "task-type range, N or LO..HI");
    bench_cmd->add_option("--m", bench.m, "machine range");
    bench_cmd->add_option("--L", bench.L, "job range");
    bench_cmd->add_option("--k", bench.k, "tasks-per-job range (single-task blocks)");
    bench_cmd->add_option("--dur", bench.dur, "duration range");
    bench_cmd->add_option("--blocks", bench.blocks, "blocks-per-job range (general shape)");
    bench_cmd->add_option("--block-tasks", bench.block_tasks,
                          "tasks-per-block range (general shape)");
    bench_cmd->add_option("--threads", bench.threads,
                          "worker cap, 0 = hardware (default: FLOWSCHED_THREADS)");

    OptArgs opt;
    CLI::App* opt_cmd = app.add_subcommand("opt", "offline optimum by exhaustive search");
    opt_cmd->add_option("--input", opt.input, "dataset file")->required();
    opt_cmd->add_option("--max-tasks", opt.max_tasks, "refusal limit");
    opt_cmd->add_option("--max-machines", opt.max_machines, "refusal limit");

    ValidateArgs validate;
    CLI::App* validate_cmd = app.add_subcommand("validate", "check a dataset or a schedule");
    validate_cmd->add_option("--input", validate.input, "dataset file")->required();
    validate_cmd->add_option("--schedule", validate.schedule, "schedule CSV to check");

    GanttArgs gantt;
    CLI::App* gantt_cmd = app.add_subcommand("gantt", "render a schedule CSV");
    gantt_cmd->add_option("--input", gantt.input, "dataset file")->required();
    gantt_cmd->add_option("--schedule", gantt.schedule, "schedule CSV")->required();
    gantt_cmd->add_option("--format", gantt.format, "text or svg")
        ->check(CLI::IsMember({"text", "svg"}));
    gantt_cmd->add_option("--out", gantt.out, "output file (default stdout)");
    gantt_cmd->add_option("--scale", gantt.scale, "time units per text cell");
    gantt_cmd->add_option("--width", gantt.width, "max text cells per row");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(solve);
        if (gen_cmd->parsed()) return cmd_generate(gen);
        if (bench_cmd->parsed()) return cmd_bench(bench);
        if (opt_cmd->parsed()) return cmd_opt(opt);
        if (validate_cmd->parsed()) return cmd_validate(validate);
        if (gantt_cmd->parsed()) return cmd_gantt(gantt);
    } catch (const UsageFailure& failure) {
        std::cerr << "error: " << failure.message << "\n";
        return kExitUsage;
    } catch (const DomainFailure& failure) {
        std::cerr << "error: " << failure.message << "\n";
        return kExitDomain;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
