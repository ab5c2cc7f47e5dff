#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lyaplab {

// Shortest exact decimal form of a double ("%.17g" round-trips binary64).
// All CSV output goes through this so that re-runs are byte-identical.
inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open CSV output: " + path);
        path_ = path;
    }

    void raw_line(const std::string& line) { out_ << line << '\n'; }

    void header(const std::vector<std::string>& cols) { write_cells(cols); }

    void row(const std::vector<std::string>& cells) { write_cells(cells); }

    const std::string& path() const { return path_; }

    static std::string cell(double x) { return format_double(x); }
    static std::string cell(long x) { return std::to_string(x); }
    static std::string cell(int x) { return std::to_string(x); }
    static std::string cell(std::size_t x) { return std::to_string(x); }

private:
    void write_cells(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    std::ofstream out_;
    std::string path_;
};

} // namespace lyaplab
