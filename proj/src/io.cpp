#include "hpart/io.hpp"

#include "hpart/errors.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace hpart {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\"");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\"");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

bool looks_numeric(std::string_view field) {
    if (field.empty()) return false;
    double v = 0.0;
    const char* begin = field.data() + (field.front() == '+' ? 1 : 0);
    const auto [ptr, ec] = std::from_chars(begin, field.data() + field.size(), v);
    return ec == std::errc() && ptr == field.data() + field.size();
}

Count parse_count(std::string_view field, std::size_t line) {
    if (field.empty()) throw ParseError(line, "missing count");
    if (field.front() == '+') field.remove_prefix(1);
    Count v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        if (looks_numeric(field)) throw ParseError(line, "count is not an integer: '" + std::string(field) + "'");
        throw ParseError(line, "not a count: '" + std::string(field) + "'");
    }
    if (v < 0) throw ParseError(line, "negative count " + std::to_string(v));
    return v;
}

}  // namespace

CountSeries ingest_csv(std::istream& in) {
    std::vector<Count> values;
    std::string raw;
    std::size_t line = 0;
    bool first_row = true;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view text(raw);
        if (line == 1 && text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
        if (trim(text).empty()) continue;
        const auto fields = split(text);
        if (first_row) {
            first_row = false;
            if (!looks_numeric(fields.back())) continue;
        }
        values.push_back(parse_count(fields.back(), line));
    }
    if (values.empty()) throw ParseError(line, "no data rows");
    return CountSeries(std::move(values));
}

CountSeries ingest_csv_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return ingest_csv(in);
}

CountSeries ingest_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path.string());
    return ingest_csv(in);
}

}  // namespace hpart
