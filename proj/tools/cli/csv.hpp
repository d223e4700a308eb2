#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qmfs::cli {

// Shortest decimal that round-trips the double.
std::string format_double(double v);

// "fnv1a64:" followed by 16 lowercase hex digits.
std::string content_hash(std::string_view text);

// Comma-separated rows with LF endings, preceded by a "# config_hash=" line
// and a header row.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::string& hash, std::vector<std::string> header);

  void row(std::span<const double> values);
  std::size_t columns() const noexcept { return header_.size(); }

 private:
  std::ostream& out_;
  std::vector<std::string> header_;
};

}  // namespace qmfs::cli
