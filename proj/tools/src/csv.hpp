#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace sympgeo::cli {

/// %.17g, which round-trips every double.
std::string format_double(double x);

/// Comma-separated file with a fixed header; every row must match its width.
class CsvWriter {
 public:
  /// Throws IoError when the file cannot be opened.
  CsvWriter(const std::string& path, std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);
  /// Flushes and throws IoError if any write failed.
  void close();

 private:
  std::string path_;
  std::size_t width_;
  std::ofstream out_;
};

}  // namespace sympgeo::cli
