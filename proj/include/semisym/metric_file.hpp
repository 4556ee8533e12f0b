#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "semisym/geometry.hpp"

namespace semisym {

/// Syntax or validation problem in a metric file. `line` is 1-based, 0 when
/// the problem is not tied to one line.
class MetricFileError : public std::runtime_error {
 public:
  MetricFileError(const std::string& what, std::size_t line, std::string section)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line),
        section_(std::move(section)) {}
  std::size_t line() const { return line_; }
  const std::string& section() const { return section_; }

 private:
  std::size_t line_;
  std::string section_;
};

struct MetricFile {
  std::string name;
  MetricField field;
  bool declared_static = false;
  /// Golden record from the [expect] section.
  std::map<std::string, std::string> expect;
};

/// Parses and validates: chart arity, all ten metric entries, point bindings,
/// and the tetrad normalisation at every declared point.
MetricFile parse_metric_file(std::string_view text, std::string name);
/// Loads a file from disk, or a built-in corpus entry when `path` has the form
/// `corpus:NAME`.
MetricFile load_metric_file(const std::filesystem::path& path);

}  // namespace semisym
