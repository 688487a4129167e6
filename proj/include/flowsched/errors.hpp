#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace flowsched {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dataset / CSV text errors. `code` is one of MISSING_HEADER, BAD_TOKEN,
// ROW_LENGTH, MISSING_TERMINATOR, UNBALANCED_PARENS, CSV_HEADER, CSV_ROW.
class ParseError : public Error {
public:
    ParseError(std::string code, int line, int col, const std::string& msg)
        : Error(code + " (line " + std::to_string(line) + ", col " +
                std::to_string(col) + "): " + msg),
          code_(std::move(code)), line_(line), col_(col) {}

    const std::string& code() const { return code_; }
    int line() const { return line_; }
    int col() const { return col_; }

private:
    std::string code_;
    int line_;
    int col_;
};

// Reservation conflicts with an existing busy interval [start, end).
class OverlapError : public Error {
public:
    OverlapError(std::int64_t start, std::int64_t end)
        : Error("OVERLAP: conflicts with busy interval [" +
                std::to_string(start) + "," + std::to_string(end) + ")"),
          conflict_start_(start), conflict_end_(end) {}

    std::int64_t conflict_start() const { return conflict_start_; }
    std::int64_t conflict_end() const { return conflict_end_; }

private:
    std::int64_t conflict_start_;
    std::int64_t conflict_end_;
};

class NoCapableMachineError : public Error {
public:
    explicit NoCapableMachineError(int task_type, const std::string& context = "")
        : Error("NO_CAPABLE_MACHINE: task type " + std::to_string(task_type) +
                (context.empty() ? "" : " " + context)),
          task_type_(task_type) {}

    int task_type() const { return task_type_; }

private:
    int task_type_;
};

// Brute-force oracle refusal.
class TooLargeError : public Error {
public:
    using Error::Error;
};

// Text Gantt wider than the configured width.
class ScaleTooSmallError : public Error {
public:
    using Error::Error;
};

}  // namespace flowsched
