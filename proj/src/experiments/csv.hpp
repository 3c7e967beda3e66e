#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace groupstat::experiments::detail {

// Shortest decimal representation that round-trips.
inline std::string format_cell(double value) {
  char buffer[40];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

inline std::string format_cell(std::size_t value) {
  char buffer[24];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

inline std::string format_cell(std::string_view value) { return std::string(value); }

// Comma-separated rows with LF endings, accumulated in memory and written
// in one shot so runs are byte-reproducible.
class CsvBuilder {
 public:
  template <class... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((append_cell(format_cell(cells), first), first = false), ...);
    content_ += '\n';
  }

  const std::string& content() const { return content_; }

 private:
  void append_cell(const std::string& cell, bool first) {
    if (!first) content_ += ',';
    content_ += cell;
  }

  std::string content_;
};

// Throws std::ios_base::failure on any write error.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace groupstat::experiments::detail
