#include "io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"

namespace hga::io {

using nlohmann::json;

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

template <typename T>
std::optional<T> parse_number(std::string_view text) {
  T value{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) return std::nullopt;
  return value;
}

std::string seed_hex(Seed seed) {
  std::ostringstream out;
  out << "0x" << std::hex << seed.value;
  return out.str();
}

}  // namespace

std::string write_matrix(SignMatrixView q) {
  const int m = q.order();
  std::string out;
  out.reserve(kMatrixHeader.size() + 8 + static_cast<std::size_t>(m) * (m + 1));
  out += kMatrixHeader;
  out += std::to_string(m);
  out += '\n';
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) out += q(r, c) > 0 ? '+' : '-';
    out += '\n';
  }
  return out;
}

SignMatrix parse_matrix(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0].substr(0, kMatrixHeader.size()) != kMatrixHeader) {
    throw ParseError(1, 1, "expected header \"" + std::string(kMatrixHeader) + "<m>\"");
  }
  const auto order = parse_number<int>(lines[0].substr(kMatrixHeader.size()));
  if (!order || *order < 1) throw ParseError(1, kMatrixHeader.size() + 1, "matrix order must be a positive integer");
  const int m = *order;
  if (lines.size() != static_cast<std::size_t>(m) + 1) {
    throw ParseError(lines.size() < static_cast<std::size_t>(m) + 1 ? lines.size() + 1 : m + 2, 0,
                     "expected " + std::to_string(m) + " rows, found " + std::to_string(lines.size() - 1));
  }
  std::vector<Sign> entries;
  entries.reserve(static_cast<std::size_t>(m) * m);
  for (int r = 0; r < m; ++r) {
    const std::string_view row = lines[r + 1];
    for (std::size_t c = 0; c < row.size() && c < static_cast<std::size_t>(m); ++c) {
      if (row[c] == '+') {
        entries.push_back(1);
      } else if (row[c] == '-') {
        entries.push_back(-1);
      } else {
        throw ParseError(r + 2, c + 1, std::string("illegal character '") + row[c] + "', expected '+' or '-'");
      }
    }
    if (row.size() != static_cast<std::size_t>(m)) {
      throw ParseError(r + 2, 0, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(m));
    }
  }
  return SignMatrix::from_entries(m, std::move(entries));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("error writing " + path.string());
}

SignMatrix read_matrix_file(const std::filesystem::path& path) { return parse_matrix(read_text_file(path)); }

void write_matrix_file(const std::filesystem::path& path, SignMatrixView q) { write_text_file(path, write_matrix(q)); }

std::string write_trace(std::span<const Fitness> trace) {
  std::string out = "iteration,min_fitness\n";
  for (std::size_t t = 0; t < trace.size(); ++t) {
    if (t > 0 && trace[t] > trace[t - 1]) {
      throw ArgumentError("trace increases at iteration " + std::to_string(t) + " (" + std::to_string(trace[t - 1]) +
                          " -> " + std::to_string(trace[t]) + ")");
    }
    out += std::to_string(t);
    out += ',';
    out += std::to_string(trace[t]);
    out += '\n';
  }
  return out;
}

std::vector<Fitness> parse_trace(std::string_view csv) {
  const auto lines = split_lines(csv);
  if (lines.empty() || lines[0] != "iteration,min_fitness") throw ParseError(1, 1, "expected trace CSV header");
  std::vector<Fitness> trace;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto comma = lines[i].find(',');
    if (comma == std::string_view::npos) throw ParseError(i + 1, 0, "expected two columns");
    const auto iteration = parse_number<std::int64_t>(lines[i].substr(0, comma));
    const auto value = parse_number<Fitness>(lines[i].substr(comma + 1));
    if (!iteration || *iteration != static_cast<std::int64_t>(trace.size())) {
      throw ParseError(i + 1, 1, "iteration must count up from 0");
    }
    if (!value) throw ParseError(i + 1, comma + 2, "min_fitness is not an integer");
    trace.push_back(*value);
  }
  return trace;
}

void write_trace_file(const std::filesystem::path& path, std::span<const Fitness> trace) {
  write_text_file(path, write_trace(trace));
}

std::string write_run_record(const RunRecord& record, const std::optional<std::string>& trace_ref) {
  const GAConfig& c = record.config;
  json config = {
      {"order", c.order},
      {"k", c.k()},
      {"pairs", c.pairs},
      {"population", c.population_size()},
      {"max_iterations", c.max_iterations},
      {"nc", c.nc},
      {"nr", c.nr},
      {"fitness", to_string(c.fitness)},
      {"mutation", to_string(c.mutation)},
      {"stall_window", c.stall_window ? json(*c.stall_window) : json(nullptr)},
      {"time_budget_secs", c.time_budget_secs ? json(*c.time_budget_secs) : json(nullptr)},
  };
  json doc = {
      {"format", kRunRecordFormat},
      {"config", config},
      {"seed", record.seed.value},
      {"seed_hex", seed_hex(record.seed)},
      {"iterations", record.iterations},
      {"final_min_fitness", record.best_fitness},
      {"success", record.success},
      {"incomplete", record.incomplete},
      {"restarts", record.restarts},
      {"wall_seconds", record.wall_seconds},
      {"best_matrix", write_matrix(record.best)},
      {"trace", trace_ref ? json(*trace_ref) : json(nullptr)},
  };
  return doc.dump(2) + "\n";
}

void write_run_record_file(const std::filesystem::path& path, const RunRecord& record,
                           const std::optional<std::string>& trace_ref) {
  write_text_file(path, write_run_record(record, trace_ref));
}

LoadedRunRecord parse_run_record(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(1, e.byte, e.what());
  }
  try {
    if (doc.at("format") != kRunRecordFormat) throw ParseError(1, 0, "unknown run record format");
    const json& c = doc.at("config");
    GAConfig config;
    config.order = c.at("order").get<int>();
    config.pairs = c.at("pairs").get<std::int64_t>();
    config.max_iterations = c.at("max_iterations").get<std::int64_t>();
    config.nc = c.at("nc").get<int>();
    config.nr = c.at("nr").get<int>();
    const auto fitness = parse_fitness_kind(c.at("fitness").get<std::string>());
    const auto mutation = parse_mutation_strategy(c.at("mutation").get<std::string>());
    if (!fitness || !mutation) throw ParseError(1, 0, "unknown fitness or mutation name");
    config.fitness = *fitness;
    config.mutation = *mutation;
    if (!c.at("stall_window").is_null()) config.stall_window = c.at("stall_window").get<int>();
    if (!c.at("time_budget_secs").is_null()) config.time_budget_secs = c.at("time_budget_secs").get<double>();
    const Seed seed{doc.at("seed").get<std::uint64_t>()};
    config.seed = seed;

    RunRecord record{config,
                     seed,
                     parse_matrix(doc.at("best_matrix").get<std::string>()),
                     doc.at("final_min_fitness").get<Fitness>(),
                     doc.at("iterations").get<std::int64_t>(),
                     {},
                     doc.at("wall_seconds").get<double>(),
                     doc.at("success").get<bool>(),
                     doc.at("incomplete").get<bool>(),
                     doc.at("restarts").get<std::int64_t>()};
    if (record.success && !is_hadamard(record.best)) {
      throw ParseError(1, 0, "record claims success but best_matrix is not Hadamard");
    }
    std::optional<std::string> trace_ref;
    if (!doc.at("trace").is_null()) trace_ref = doc.at("trace").get<std::string>();
    return {std::move(record), std::move(trace_ref)};
  } catch (const json::exception& e) {
    throw ParseError(1, 0, std::string("malformed run record: ") + e.what());
  }
}

LoadedRunRecord read_run_record_file(const std::filesystem::path& path) {
  return parse_run_record(read_text_file(path));
}

}  // namespace hga::io
