#include "csv.hpp"

#include <fstream>

namespace groupstat::experiments::detail {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out;
  out.exceptions(std::ios::failbit | std::ios::badbit);
  out.open(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
}

}  // namespace groupstat::experiments::detail
