#include "saa/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "saa/numeric.hpp"

namespace saa {

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
  }
}

CsvBuilder::CsvBuilder(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i > 0) out_ += ',';
    out_ += header[i];
  }
  out_ += '\n';
}

CsvBuilder& CsvBuilder::cell(const std::string& v) {
  if (in_row_ > 0) out_ += ',';
  out_ += v;
  ++in_row_;
  return *this;
}

CsvBuilder& CsvBuilder::cell(double v) { return cell(format_double(v)); }

CsvBuilder& CsvBuilder::cell(std::int64_t v) { return cell(std::to_string(v)); }

CsvBuilder& CsvBuilder::cell(const std::optional<double>& v) {
  return cell(v ? format_double(*v) : std::string("inf"));
}

CsvBuilder& CsvBuilder::end_row() {
  if (in_row_ != columns_)
    throw std::logic_error("CsvBuilder: row width does not match the header");
  out_ += '\n';
  in_row_ = 0;
  return *this;
}

}  // namespace saa
