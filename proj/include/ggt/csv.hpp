// Minimal CSV emission with deterministic number formatting.
#pragma once

#include <cstdio>
#include <cstdint>
#include <string>

namespace ggt {

/// Shortest decimal form that round-trips a double; stable across runs.
inline std::string format_double(double x) {
    char buf[64];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == x) break;
    }
    return buf;
}

class CsvWriter {
public:
    void field(const std::string& s) {
        if (!line_.empty()) line_ += ',';
        line_ += s;
    }
    void field(double x) { field(format_double(x)); }
    void field(int x) { field(std::to_string(x)); }
    void field(std::uint64_t x) { field(std::to_string(x)); }
    void endrow() {
        out_ += line_;
        out_ += '\n';
        line_.clear();
    }
    const std::string& str() const { return out_; }

private:
    std::string line_;
    std::string out_;
};

}  // namespace ggt
