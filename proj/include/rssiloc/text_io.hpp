#pragma once

// Shared plumbing for the line-oriented text formats: shortest round-trip
// number formatting, strict field parsing, versioned headers, and
// write-then-rename file output.

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rssiloc/error.hpp"

namespace rssiloc::text_io {

/// Shortest decimal representation that parses back to the same double.
std::string format_number(double value);

/// Fixed-point with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

/// Reads a whole file. Throws IoFailure.
std::string read_file(const std::filesystem::path& path);

/// Writes `content` to a sibling temporary file, then renames it over
/// `path`, so readers never observe a partially written file. Throws
/// IoFailure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Line cursor over a text buffer with 1-based line numbers. Strips a
/// trailing '\r' from each line.
class LineReader {
 public:
  LineReader(std::string_view content, std::string_view source_name, ErrorCode error_code);

  /// Next non-blank line, or false at end of input.
  bool next(std::string_view& line);
  std::size_t line_number() const { return line_number_; }
  bool at_end() const { return pos_ >= content_.size(); }

  /// Throws Error(error_code) prefixed with "<source>:<line>: ".
  [[noreturn]] void fail(const std::string& message) const;

  /// Splits on ',' and checks the field count.
  std::vector<std::string_view> fields(std::string_view line, std::size_t expected) const;
  double number(std::string_view field, std::string_view name) const;
  std::size_t count(std::string_view field, std::string_view name) const;

  /// Validates "# rssiloc-<kind> v<version>[ key=value...]" and returns the
  /// key/value pairs.
  std::map<std::string, std::string> header(std::string_view kind, int version);

  /// Requires the next line to equal `columns` exactly.
  void column_header(std::string_view columns);

 private:
  std::string_view content_;
  std::string source_name_;
  ErrorCode error_code_;
  std::size_t pos_ = 0;
  std::size_t line_number_ = 0;
};

/// "# rssiloc-<kind> v<version>" followed by " key=value" for each parameter.
std::string header_line(std::string_view kind, int version,
                        const std::vector<std::pair<std::string, std::string>>& params = {});

/// Anchor ids are written unquoted, so they may not contain separators.
bool is_valid_anchor_id(std::string_view id);

}  // namespace rssiloc::text_io
