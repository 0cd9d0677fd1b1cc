#include "llab/csvio.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace llab {

std::uint64_t fnv1a_hash(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::string config_json, std::vector<std::string> columns, bool with_timestamp)
    : columns_(std::move(columns)) {
    nlohmann::json j = nlohmann::json::parse(config_json);
    j["hash"] = [&] {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(fnv1a_hash(config_json)));
        return std::string(buf);
    }();
    if (with_timestamp) {
        auto now = std::chrono::system_clock::now().time_since_epoch();
        j["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(now).count();
    }
    header_ = "# " + j.dump();
}

void CsvWriter::add_comment(const std::string& text) { comments_.push_back("# " + text); }

void CsvWriter::add_row(const std::vector<double>& values) {
    std::ostringstream os;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) os << ',';
        os << format_double(values[i]);
    }
    rows_.push_back(os.str());
}

void CsvWriter::add_row_raw(const std::vector<std::string>& values) {
    std::ostringstream os;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) os << ',';
        os << values[i];
    }
    rows_.push_back(os.str());
}

std::string CsvWriter::str() const {
    std::ostringstream os;
    os << header_ << '\n';
    for (const auto& c : comments_) os << c << '\n';
    for (size_t i = 0; i < columns_.size(); ++i) {
        if (i) os << ',';
        os << columns_[i];
    }
    os << '\n';
    for (const auto& r : rows_) os << r << '\n';
    return os.str();
}

void CsvWriter::write_file(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << str();
}

}  // namespace llab
