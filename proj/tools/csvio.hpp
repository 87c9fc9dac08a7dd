#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace bmcli {

// Fixed 17-significant-digit float formatting, locale-independent, so that
// identical runs produce byte-identical files.
inline std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline std::string fmt(int v) { return std::to_string(v); }

class Table {
  public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    template <typename... Ts>
    void row(Ts... vals) {
        std::vector<std::string> r;
        (r.push_back(fmt(vals)), ...);
        rows_.push_back(std::move(r));
    }

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }

    std::string to_csv() const {
        std::ostringstream os;
        for (size_t i = 0; i < header_.size(); ++i)
            os << header_[i] << (i + 1 < header_.size() ? "," : "\n");
        for (const auto& r : rows_)
            for (size_t i = 0; i < r.size(); ++i)
                os << r[i] << (i + 1 < r.size() ? "," : "\n");
        return os.str();
    }

    std::string to_json() const {
        std::ostringstream os;
        os << "[\n";
        for (size_t j = 0; j < rows_.size(); ++j) {
            os << "  {";
            for (size_t i = 0; i < header_.size(); ++i) {
                os << "\"" << header_[i] << "\": " << rows_[j][i];
                if (i + 1 < header_.size()) os << ", ";
            }
            os << "}" << (j + 1 < rows_.size() ? "," : "") << "\n";
        }
        os << "]\n";
        return os.str();
    }

    double value(size_t row, size_t col) const { return std::stod(rows_[row][col]); }

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

inline void write_file(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << content;
}

}  // namespace bmcli
