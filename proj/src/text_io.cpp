#include "rssiloc/text_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

namespace rssiloc::text_io {

std::string format_number(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw Error(ErrorCode::InvalidArgument, "cannot format number");
  return std::string(buf.data(), ptr);
}

std::string format_fixed(double value, int decimals) {
  std::array<char, 64> buf{};
  auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, decimals);
  if (ec != std::errc{}) throw Error(ErrorCode::InvalidArgument, "cannot format number");
  return std::string(buf.data(), ptr);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string() + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoFailure, "read error on " + path.string());
  return buffer.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::IoFailure, "write error on " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error(ErrorCode::IoFailure, "cannot move output into place at " + path.string() + ": " + ec.message());
  }
}

LineReader::LineReader(std::string_view content, std::string_view source_name, ErrorCode error_code)
    : content_(content), source_name_(source_name), error_code_(error_code) {}

bool LineReader::next(std::string_view& line) {
  while (pos_ < content_.size()) {
    const std::size_t end = content_.find('\n', pos_);
    const std::size_t stop = end == std::string_view::npos ? content_.size() : end;
    line = content_.substr(pos_, stop - pos_);
    pos_ = stop == content_.size() ? stop : stop + 1;
    ++line_number_;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") != std::string_view::npos) return true;
  }
  return false;
}

void LineReader::fail(const std::string& message) const {
  throw Error(error_code_, source_name_ + ":" + std::to_string(line_number_) + ": " + message);
}

std::vector<std::string_view> LineReader::fields(std::string_view line, std::size_t expected) const {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  if (out.size() != expected) {
    fail("expected " + std::to_string(expected) + " fields, found " + std::to_string(out.size()));
  }
  return out;
}

double LineReader::number(std::string_view field, std::string_view name) const {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc{} || ptr != last) {
    fail("field '" + std::string(name) + "' is not a number: '" + std::string(field) + "'");
  }
  if (!std::isfinite(value)) fail("field '" + std::string(name) + "' is not finite");
  return value;
}

std::size_t LineReader::count(std::string_view field, std::string_view name) const {
  std::size_t value = 0;
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), last, value);
  if (field.empty() || ec != std::errc{} || ptr != last) {
    fail("field '" + std::string(name) + "' is not a non-negative integer: '" + std::string(field) + "'");
  }
  return value;
}

std::map<std::string, std::string> LineReader::header(std::string_view kind, int version) {
  std::string_view line;
  if (!next(line)) fail("missing header line");
  const std::string expected = "# rssiloc-" + std::string(kind) + " v" + std::to_string(version);
  if (line.substr(0, expected.size()) != expected ||
      (line.size() > expected.size() && line[expected.size()] != ' ')) {
    fail("expected header '" + expected + "'");
  }
  std::map<std::string, std::string> params;
  std::istringstream rest{std::string(line.substr(expected.size()))};
  std::string token;
  while (rest >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) fail("malformed header parameter '" + token + "'");
    params[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return params;
}

void LineReader::column_header(std::string_view columns) {
  std::string_view line;
  if (!next(line)) fail("missing column header '" + std::string(columns) + "'");
  if (line != columns) fail("expected column header '" + std::string(columns) + "'");
}

std::string header_line(std::string_view kind, int version,
                        const std::vector<std::pair<std::string, std::string>>& params) {
  std::string out = "# rssiloc-" + std::string(kind) + " v" + std::to_string(version);
  for (const auto& [key, value] : params) out += " " + key + "=" + value;
  return out;
}

bool is_valid_anchor_id(std::string_view id) {
  if (id.empty()) return false;
  for (char c : id) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '=') return false;
  }
  return true;
}

}  // namespace rssiloc::text_io
