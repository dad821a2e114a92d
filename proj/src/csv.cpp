#include "oscwave/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "oscwave/errors.hpp"

namespace oscwave {

namespace {

void require_clean_cell(const std::string& cell) {
    if (cell.find_first_of(",\"\r\n") != std::string::npos)
        throw validation_error("emit_table: cell \"" + cell +
                               "\" contains a delimiter character");
}

void append_row(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        require_clean_cell(cells[i]);
        if (i > 0) out += ',';
        out += cells[i];
    }
    out += '\n';
}

}  // namespace

std::string number_cell(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string emit_table(const std::vector<std::string>& columns,
                       const std::vector<std::vector<std::string>>& rows) {
    if (columns.empty())
        throw validation_error("emit_table: a table needs at least one column");
    std::string out;
    append_row(out, columns);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != columns.size()) {
            std::ostringstream msg;
            msg << "emit_table: row " << r << " has " << rows[r].size()
                << " cells but the header declares " << columns.size();
            throw validation_error(msg.str());
        }
        append_row(out, rows[r]);
    }
    return out;
}

std::string emit_table(const std::vector<std::string>& columns,
                       const std::vector<std::vector<double>>& rows) {
    std::vector<std::vector<std::string>> cells(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        cells[r].reserve(rows[r].size());
        for (double x : rows[r]) cells[r].push_back(number_cell(x));
    }
    return emit_table(columns, cells);
}

void write_text_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace oscwave
