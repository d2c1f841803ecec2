#pragma once

#include "hpart/model.hpp"

#include <filesystem>
#include <iosfwd>
#include <string_view>

namespace hpart {

/**
 * @brief Reads a count series from CSV text.
 *
 * One count per line, or several comma-separated columns with the count in
 * the last one. A first row whose count column is not numeric is treated as
 * a header. Blank lines and CRLF endings are accepted. Throws ParseError
 * (with the 1-based line) on negative, non-integer or missing counts and on
 * input without data rows.
 */
[[nodiscard]] CountSeries ingest_csv(std::istream& in);
[[nodiscard]] CountSeries ingest_csv_text(std::string_view text);
[[nodiscard]] CountSeries ingest_csv_file(const std::filesystem::path& path);

}  // namespace hpart
