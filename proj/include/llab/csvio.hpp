#pragma once

#include <string>
#include <vector>

namespace llab {

// CSV with a single '#'-prefixed JSON header line carrying the resolved
// config and its content hash; bodies are byte-deterministic for a fixed
// config (timestamps only appear when explicitly requested).
class CsvWriter {
  public:
    // `config_json` must be a serialized JSON object; a "hash" field is added.
    CsvWriter(std::string config_json, std::vector<std::string> columns,
              bool with_timestamp = false);

    void add_comment(const std::string& text);  // extra '#' line before rows
    void add_row(const std::vector<double>& values);
    void add_row_raw(const std::vector<std::string>& values);

    std::string str() const;
    void write_file(const std::string& path) const;

  private:
    std::string header_;
    std::vector<std::string> comments_;
    std::vector<std::string> columns_;
    std::vector<std::string> rows_;
};

std::string format_double(double v);          // shortest round-trip-ish, %.17g
std::uint64_t fnv1a_hash(const std::string&);  // config content hash

}  // namespace llab
