#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "engine.hpp"

namespace hga::io {

inline constexpr std::string_view kMatrixHeader = "hadamard-ga matrix m=";
inline constexpr std::string_view kRunRecordFormat = "hadamard-ga run-record v1";

/// Header line then one line of '+'/'-' per row, newline terminated.
std::string write_matrix(SignMatrixView q);

/// Inverse of write_matrix. Accepts a trailing newline and CRLF line ends;
/// anything else malformed raises ParseError with its line and column.
SignMatrix parse_matrix(std::string_view text);

SignMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, SignMatrixView q);

/// "iteration,min_fitness" rows. Throws ArgumentError if the trace increases
/// anywhere.
std::string write_trace(std::span<const Fitness> trace);
std::vector<Fitness> parse_trace(std::string_view csv);
void write_trace_file(const std::filesystem::path& path, std::span<const Fitness> trace);

/// JSON run record. Keys are emitted sorted, so two records of the same run
/// differ only in wall_seconds.
std::string write_run_record(const RunRecord& record, const std::optional<std::string>& trace_ref = std::nullopt);
void write_run_record_file(const std::filesystem::path& path, const RunRecord& record,
                           const std::optional<std::string>& trace_ref = std::nullopt);

struct LoadedRunRecord {
  RunRecord record;
  std::optional<std::string> trace_ref;
};

/// Parses a run record. A record claiming success must embed a matrix that
/// passes is_hadamard, otherwise ParseError. The trace itself is not stored
/// in the record; record.trace is left empty.
LoadedRunRecord parse_run_record(std::string_view json_text);
LoadedRunRecord read_run_record_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace hga::io
