#include "flowsched/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "flowsched/errors.hpp"

namespace flowsched {

namespace {

struct Token {
    enum Kind { Integer, Open, Close } kind;
    Time value = 0;
    int col = 0;  // 1-based character column
};

struct Line {
    int number = 0;  // 1-based
    std::vector<Token> tokens;
};

bool is_separator(std::string_view line) {
    std::size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string_view::npos) return false;
    std::size_t j = i;
    while (j < line.size() && (line[j] == '-' || line[j] == '+')) ++j;
    // First token made solely of '-'/'+': the whole line is decoration.
    return j > i && (j == line.size() || line[j] == ' ' || line[j] == '\t' || line[j] == '\r');
}

std::vector<Token> tokenize(std::string_view line, int line_number) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '/') break;  // comment to end of line
        if (c == '(') {
            tokens.push_back({Token::Open, 0, static_cast<int>(i) + 1});
            ++i;
            continue;
        }
        if (c == ')') {
            tokens.push_back({Token::Close, 0, static_cast<int>(i) + 1});
            ++i;
            continue;
        }
        std::size_t j = i;
        if (line[j] == '-' || line[j] == '+') ++j;
        while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
        Time value = 0;
        auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
        if (ec != std::errc() || ptr != line.data() + j || j == i ||
            (j == i + 1 && !std::isdigit(static_cast<unsigned char>(line[i])))) {
            throw ParseError("BAD_TOKEN", line_number, static_cast<int>(i) + 1,
                             "expected integer or parenthesis, got '" +
                                 std::string(line.substr(i, j - i + 1)) + "'");
        }
        // A token must end at whitespace, a paren or a comment.
        if (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' &&
            line[j] != '(' && line[j] != ')' && line[j] != '/') {
            throw ParseError("BAD_TOKEN", line_number, static_cast<int>(i) + 1,
                             "malformed integer token");
        }
        tokens.push_back({Token::Integer, value, static_cast<int>(i) + 1});
        i = j;
    }
    return tokens;
}

// Header lines carry annotation after the leading integer ("8 = t = ...");
// only the first integer matters.
Time header_value(std::string_view raw, int line_number) {
    std::size_t i = raw.find_first_not_of(" \t\r");
    if (i == std::string_view::npos)
        throw ParseError("MISSING_HEADER", line_number, 1, "blank header line");
    std::size_t j = i;
    if (raw[j] == '-' || raw[j] == '+') ++j;
    while (j < raw.size() && std::isdigit(static_cast<unsigned char>(raw[j]))) ++j;
    Time value = 0;
    auto [ptr, ec] = std::from_chars(raw.data() + i, raw.data() + j, value);
    if (ec != std::errc() || ptr != raw.data() + j || j == i)
        throw ParseError("MISSING_HEADER", line_number, static_cast<int>(i) + 1,
                         "header line must start with an integer");
    return value;
}

}  // namespace

ParsedInstance parse_instance(std::string_view text) {
    // Split into raw lines, dropping separators and blanks up front.
    std::vector<std::pair<int, std::string_view>> raw_lines;
    {
        int number = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t eol = text.find('\n', pos);
            std::string_view line =
                text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
            ++number;
            std::size_t content = line.find_first_not_of(" \t\r");
            bool blank = content == std::string_view::npos || line[content] == '/';
            if (!blank && !is_separator(line)) raw_lines.emplace_back(number, line);
            if (eol == std::string_view::npos) break;
            pos = eol + 1;
        }
    }

    std::size_t cursor = 0;
    auto next_line = [&]() -> const std::pair<int, std::string_view>* {
        if (cursor >= raw_lines.size()) return nullptr;
        return &raw_lines[cursor++];
    };

    // Header: t, H(=m), K, L.
    Time header[4];
    const char* header_names[4] = {"t", "H", "K", "L"};
    for (int h = 0; h < 4; ++h) {
        const auto* line = next_line();
        if (!line)
            throw ParseError("MISSING_HEADER", 0, 1,
                             std::string("missing header line for ") + header_names[h]);
        header[h] = header_value(line->second, line->first);
    }
    const Time t = header[0], m = header[1], header_k = header[2], header_l = header[3];
    if (t < 1)
        throw ParseError("MISSING_HEADER", 0, 1, "t must be >= 1, got " + std::to_string(t));
    if (m < 1)
        throw ParseError("MISSING_HEADER", 0, 1, "H must be >= 1, got " + std::to_string(m));

    // Matrix rows.
    std::vector<Time> entries;
    entries.reserve(static_cast<std::size_t>(m * t));
    for (Time row = 1; row <= m; ++row) {
        const auto* line = next_line();
        if (!line)
            throw ParseError("ROW_LENGTH", 0, 1,
                             "expected " + std::to_string(m) + " matrix rows, got " +
                                 std::to_string(row - 1));
        std::vector<Token> tokens = tokenize(line->second, line->first);
        if (static_cast<Time>(tokens.size()) != t)
            throw ParseError("ROW_LENGTH", line->first, 1,
                             "matrix row " + std::to_string(row) + " has " +
                                 std::to_string(tokens.size()) + " entries, expected " +
                                 std::to_string(t));
        for (const Token& token : tokens) {
            if (token.kind != Token::Integer)
                throw ParseError("BAD_TOKEN", line->first, token.col,
                                 "parenthesis not allowed in matrix rows");
            entries.push_back(token.value);
        }
    }

    // Job lines until the 0 terminator.
    ParsedInstance result;
    result.instance.matrix =
        TimeMatrix(static_cast<int>(m), static_cast<int>(t), std::move(entries));
    bool terminated = false;
    while (const auto* line = next_line()) {
        std::vector<Token> tokens = tokenize(line->second, line->first);
        if (tokens.empty()) continue;
        if (tokens.front().kind == Token::Integer && tokens.front().value == 0) {
            terminated = true;
            break;
        }
        Job job;
        bool in_group = false;
        Block group;
        for (const Token& token : tokens) {
            switch (token.kind) {
                case Token::Open:
                    if (in_group)
                        throw ParseError("UNBALANCED_PARENS", line->first, token.col,
                                         "nested '('");
                    in_group = true;
                    group.task_types.clear();
                    break;
                case Token::Close:
                    if (!in_group)
                        throw ParseError("UNBALANCED_PARENS", line->first, token.col,
                                         "')' without '('");
                    in_group = false;
                    job.blocks.push_back(group);
                    break;
                case Token::Integer:
                    if (in_group)
                        group.task_types.push_back(static_cast<int>(token.value));
                    else
                        job.blocks.push_back(Block{{static_cast<int>(token.value)}});
                    break;
            }
        }
        if (in_group)
            throw ParseError("UNBALANCED_PARENS", line->first,
                             static_cast<int>(line->second.size()), "'(' not closed");
        result.instance.jobs.push_back(std::move(job));
    }
    if (!terminated)
        throw ParseError("MISSING_TERMINATOR", 0, 1, "no line starting with 0 after the jobs");

    const int actual_l = result.instance.job_count();
    if (header_l != actual_l)
        result.warnings.push_back("header L=" + std::to_string(header_l) + " but file has " +
                                  std::to_string(actual_l) + " jobs");
    // K is meaningful only when every job has one size.
    if (actual_l > 0) {
        int first_size = job_size(result.instance.jobs[0]);
        bool uniform = std::all_of(result.instance.jobs.begin(), result.instance.jobs.end(),
                                   [&](const Job& j) { return job_size(j) == first_size; });
        if (uniform && header_k != first_size)
            result.warnings.push_back("header K=" + std::to_string(header_k) +
                                      " but every job has size " + std::to_string(first_size));
    }
    return result;
}

std::string write_instance(const Instance& instance) {
    std::ostringstream out;
    const TimeMatrix& matrix = instance.matrix;

    int k_header = 0;
    if (!instance.jobs.empty()) {
        k_header = job_size(instance.jobs[0]);
        for (const Job& job : instance.jobs) k_header = std::max(k_header, job_size(job));
    }

    out << matrix.types() << " = t = number of Task-types\n";
    out << matrix.machines() << " = H = number of Machines\n";
    out << k_header << " = K = number of tasks per Jobs\n";
    out << instance.job_count() << " = L = number of Jobs\n";
    out << "-----+\n";
    for (int i = 1; i <= matrix.machines(); ++i) {
        for (int tau = 1; tau <= matrix.types(); ++tau) {
            if (tau > 1) out << ' ';
            out << matrix.at(i, tau);
        }
        out << " / Machine " << i << ".\n";
    }
    out << "-----+\n\n";
    for (int l = 1; l <= instance.job_count(); ++l) {
        const Job& job = instance.jobs[l - 1];
        bool first = true;
        for (const Block& block : job.blocks) {
            if (!first) out << ' ';
            first = false;
            if (block.length() == 1) {
                out << block.task_types[0];
            } else {
                out << '(';
                for (int k = 0; k < block.length(); ++k) {
                    if (k > 0) out << ' ';
                    out << block.task_types[k];
                }
                out << ')';
            }
        }
        out << " / Job " << l << ".\n";
    }
    out << "0 / END\n";
    return out.str();
}

std::string write_schedule_csv(const Schedule& schedule) {
    std::ostringstream out;
    out << "job,block,pos,task_type,machine,start,end\n";
    for (const Assignment& a : schedule.assignments)
        out << a.task.job << ',' << a.task.block << ',' << a.task.pos << ',' << a.task_type
            << ',' << a.machine << ',' << a.start << ',' << a.end << '\n';
    return out.str();
}

Schedule parse_schedule_csv(std::string_view text) {
    Schedule schedule;
    int line_number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line_number == 1) {
            if (line != "job,block,pos,task_type,machine,start,end")
                throw ParseError("CSV_HEADER", 1, 1, "unexpected schedule CSV header");
        } else if (!line.empty()) {
            std::array<Time, 7> fields{};
            std::size_t field = 0;
            std::size_t start = 0;
            while (field < 7) {
                std::size_t comma = line.find(',', start);
                std::string_view cell =
                    line.substr(start, comma == std::string_view::npos ? line.size() - start
                                                                       : comma - start);
                auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(),
                                                 fields[field]);
                if (ec != std::errc() || ptr != cell.data() + cell.size())
                    throw ParseError("CSV_ROW", line_number, static_cast<int>(start) + 1,
                                     "expected integer field");
                ++field;
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
            if (field != 7)
                throw ParseError("CSV_ROW", line_number, 1, "expected 7 fields");
            Assignment a;
            a.task = {static_cast<int>(fields[0]), static_cast<int>(fields[1]),
                      static_cast<int>(fields[2])};
            a.task_type = static_cast<int>(fields[3]);
            a.machine = static_cast<int>(fields[4]);
            a.start = fields[5];
            a.end = fields[6];
            schedule.makespan = std::max(schedule.makespan, a.end);
            schedule.assignments.push_back(a);
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    if (line_number == 0) throw ParseError("CSV_HEADER", 1, 1, "empty schedule CSV");
    return schedule;
}

namespace {

char bar_letter(std::size_t task_index) {
    static const char alphabet[] =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
    return alphabet[task_index % 62];
}

std::string render_gantt_text(const Instance& instance, const Schedule& schedule,
                              const GanttOptions& options) {
    if (options.scale < 1) throw std::invalid_argument("render_gantt: scale must be >= 1");
    const Time makespan = schedule.makespan;
    const Time cells = (makespan + options.scale - 1) / options.scale;
    if (cells > options.max_width)
        throw ScaleTooSmallError("SCALE_TOO_SMALL: makespan " + std::to_string(makespan) +
                                 " needs " + std::to_string(cells) + " cells, width is " +
                                 std::to_string(options.max_width));

    const int machines = instance.matrix.machines();
    std::ostringstream out;
    out << "t=0.." << makespan << " scale=" << options.scale << "\n";
    for (int i = 1; i <= machines; ++i) {
        std::string row(static_cast<std::size_t>(cells), ' ');
        for (Time cell = 0; cell < cells; ++cell) {
            const Time lo = cell * options.scale;
            const Time hi = lo + options.scale;
            // Prefer the assignment covering the cell start; otherwise the
            // earliest-starting one intersecting the cell.
            const Assignment* best = nullptr;
            for (std::size_t idx = 0; idx < schedule.assignments.size(); ++idx) {
                const Assignment& a = schedule.assignments[idx];
                if (a.machine != i || a.end <= lo || a.start >= hi) continue;
                if (a.start <= lo) {
                    best = &a;
                    break;
                }
                if (!best || a.start < best->start) best = &a;
            }
            if (best)
                row[static_cast<std::size_t>(cell)] =
                    bar_letter(static_cast<std::size_t>(best - schedule.assignments.data()));
        }
        out << 'M' << i << " |" << row << "|\n";
    }
    for (std::size_t idx = 0; idx < schedule.assignments.size(); ++idx) {
        const Assignment& a = schedule.assignments[idx];
        out << "  " << bar_letter(idx) << " = " << a.task.to_string() << " type " << a.task_type
            << " M" << a.machine << " [" << a.start << "," << a.end << ")\n";
    }
    return out.str();
}

// Fixed palette, job l gets color (l-1) mod 12.
const char* const kPalette[12] = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
    "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295",
};

std::string render_gantt_svg(const Instance& instance, const Schedule& schedule) {
    const int machines = instance.matrix.machines();
    const Time makespan = schedule.makespan;
    const int px_per_unit = 24;
    const int row_height = 28;
    const int bar_height = 22;
    const int margin_left = 56;
    const int margin_top = 24;
    const long long width = margin_left + static_cast<long long>(makespan) * px_per_unit + 16;
    const long long height = margin_top + static_cast<long long>(machines) * row_height + 32;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\" font-family=\"monospace\" font-size=\"11\">\n";
    out << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    for (int i = 1; i <= machines; ++i) {
        const long long y = margin_top + static_cast<long long>(i - 1) * row_height;
        out << "  <text x=\"4\" y=\"" << y + bar_height - 6 << "\">M" << i << "</text>\n";
        out << "  <line x1=\"" << margin_left << "\" y1=\"" << y + bar_height << "\" x2=\""
            << margin_left + makespan * px_per_unit << "\" y2=\"" << y + bar_height
            << "\" stroke=\"#dddddd\"/>\n";
    }
    for (const Assignment& a : schedule.assignments) {
        const long long x = margin_left + a.start * px_per_unit;
        const long long y = margin_top + static_cast<long long>(a.machine - 1) * row_height;
        const long long w = (a.end - a.start) * px_per_unit;
        const char* fill = kPalette[(a.task.job - 1) % 12];
        out << "  <g><title>" << a.task.to_string() << " type " << a.task_type << " ["
            << a.start << "," << a.end << ")</title>\n";
        out << "    <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\""
            << bar_height << "\" fill=\"" << fill << "\" stroke=\"#333333\"/>\n";
        out << "    <text x=\"" << x + 3 << "\" y=\"" << y + bar_height - 7
            << "\" fill=\"#000000\">" << a.task.to_string() << "</text>\n";
        out << "  </g>\n";
    }
    // Time axis, 1-2-5 tick steps, at most ~20 labels.
    const long long axis_y = margin_top + static_cast<long long>(machines) * row_height + 12;
    Time step = 1;
    while (makespan / step > 20) {
        Time lead = step;
        while (lead >= 10) lead /= 10;
        step = lead == 2 ? step / 2 * 5 : step * 2;
    }
    for (Time tick = 0; tick <= makespan; tick += step)
        out << "  <text x=\"" << margin_left + tick * px_per_unit << "\" y=\"" << axis_y
            << "\" fill=\"#555555\">" << tick << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace

std::string render_gantt(const Instance& instance, const Schedule& schedule,
                         const GanttOptions& options) {
    if (options.format == GanttFormat::Svg) return render_gantt_svg(instance, schedule);
    return render_gantt_text(instance, schedule, options);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write: " + path);
}

}  // namespace flowsched
