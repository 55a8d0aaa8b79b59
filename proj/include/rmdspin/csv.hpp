#ifndef RMDSPIN_CSV_HPP
#define RMDSPIN_CSV_HPP

#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace rmdspin {

// Shortest round-trip-exact decimal form of a double.
std::string format_double(double value);

// Comma-separated UTF-8 output, '\n' line endings, header row first.
// Doubles are written round-trip exact so a rerun can be diffed bytewise.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void header(const std::vector<std::string>& names);

    CsvWriter& field(double v);
    CsvWriter& field(std::uint64_t v);
    CsvWriter& field(std::int64_t v);
    CsvWriter& field(int v) { return field(static_cast<std::int64_t>(v)); }
    CsvWriter& field(bool v);
    CsvWriter& field(std::string_view v);
    // Keeps string literals from decaying to the bool overload.
    CsvWriter& field(const char* v) { return field(std::string_view(v)); }
    void end_row();

private:
    void separator();
    std::ofstream out_;
    bool row_open_ = false;
};

} // namespace rmdspin

#endif
