#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "flowsched/model.hpp"
#include "flowsched/scheduler.hpp"

namespace flowsched {

struct ParsedInstance {
    Instance instance;
    // Advisory header mismatches (K, L) and similar non-fatal findings.
    std::vector<std::string> warnings;
};

// Dataset text format:
//   - "/" starts a comment running to end of line;
//   - a line whose first token consists solely of '-' and '+' characters is
//     a separator and is ignored entirely (this accepts trailing decoration
//     after the separator token);
//   - blank lines are ignored;
//   - header: four lines whose first token is an integer, in order
//     t, H(=m), K, L; the rest of a header line is annotation;
//   - then m rows of t matrix entries;
//   - then one line per job: a bare integer is a single-task block, a
//     parenthesized group "( t1 t2 ... )" is one multi-task block;
//   - a line whose first token is 0 terminates the job list.
// K and L headers are advisory: mismatches produce warnings, not errors.
ParsedInstance parse_instance(std::string_view text);

// Canonical text emission; parse_instance(write_instance(x)) is structurally
// equal to x. Blocks with one task are written bare, longer blocks in
// parentheses.
std::string write_instance(const Instance& instance);

// CSV with header "job,block,pos,task_type,machine,start,end", one row per
// assignment in stream order.
std::string write_schedule_csv(const Schedule& schedule);
Schedule parse_schedule_csv(std::string_view text);

enum class GanttFormat { Text, Svg };

struct GanttOptions {
    GanttFormat format = GanttFormat::Text;
    // Text rendering: time units represented by one character cell.
    int scale = 1;
    // Text rendering: max cells per machine row before SCALE_TOO_SMALL.
    int max_width = 200;
};

// Deterministic Gantt rendering; machines as rows, time horizontal. Text
// bars use one letter per task (cycling A-Z a-z 0-9) with a legend mapping
// letters to J<job>.<block>.<pos>. SVG bars carry the label directly and are
// colored by job from a fixed 12-color palette.
std::string render_gantt(const Instance& instance, const Schedule& schedule,
                         const GanttOptions& options = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace flowsched
