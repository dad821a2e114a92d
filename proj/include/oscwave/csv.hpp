#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace oscwave {

// A double rendered with 17 significant digits, enough to reparse to the
// identical bit pattern.
std::string number_cell(double x);

// CSV bytes: mandatory header row, comma separated, each line ended with a
// single line feed. Cells must not contain commas, quotes, or line breaks
// (validation_error); every row must match the header width.
std::string emit_table(const std::vector<std::string>& columns,
                       const std::vector<std::vector<std::string>>& rows);

// Convenience for all-numeric tables; cells are formatted with number_cell.
std::string emit_table(const std::vector<std::string>& columns,
                       const std::vector<std::vector<double>>& rows);

// Writes bytes as-is; failures are reported with the path in the message.
void write_text_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace oscwave
