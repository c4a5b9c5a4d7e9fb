#pragma once

#include <optional>
#include <string>
#include <vector>

namespace saa {

// Writes via a temp file in the same directory plus rename, so readers never
// observe a partial file.
void atomic_write_file(const std::string& path, const std::string& content);

// Minimal CSV builder; doubles use shortest round-trip formatting and the
// +infinity tag prints as "inf".
class CsvBuilder {
 public:
  explicit CsvBuilder(std::vector<std::string> header);

  CsvBuilder& cell(const std::string& v);
  CsvBuilder& cell(double v);
  CsvBuilder& cell(std::int64_t v);
  CsvBuilder& cell(const std::optional<double>& v);
  CsvBuilder& end_row();

  const std::string& str() const { return out_; }

 private:
  std::string out_;
  std::size_t columns_ = 0;
  std::size_t in_row_ = 0;
};

}  // namespace saa
