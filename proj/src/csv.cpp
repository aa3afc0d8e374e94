#include "ets/csv.hpp"

#include "ets/errors.hpp"

#include <fstream>
#include <sstream>

namespace ets::csv {

std::vector<std::vector<std::string>> parse(const std::string& text, const std::string& origin) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string cell;
    bool in_quotes = false;
    bool cell_started = false;
    std::size_t line = 1;

    auto end_cell = [&] {
        record.push_back(std::move(cell));
        cell.clear();
        cell_started = false;
    };
    auto end_record = [&] {
        end_cell();
        records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                cell += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!cell.empty() || cell_started)
                    throw ParseError(origin + ": stray quote inside unquoted cell", line);
                in_quotes = true;
                cell_started = true;
                break;
            case ',': end_cell(); break;
            case '\r': break;
            case '\n':
                end_record();
                ++line;
                break;
            default:
                cell += c;
                cell_started = true;
                break;
        }
    }
    if (in_quotes) throw ParseError(origin + ": unterminated quoted cell", line);
    if (cell_started || !cell.empty() || !record.empty()) end_record();
    return records;
}

std::vector<std::vector<std::string>> read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error("cannot open " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), file.filename().string());
}

std::string escape_cell(const std::string& cell) {
    bool needs_quotes = cell.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quotes) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

void write_file(const std::filesystem::path& file,
                const std::vector<std::vector<std::string>>& records) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error("cannot write " + file.string());
    for (const auto& record : records) {
        for (std::size_t i = 0; i < record.size(); ++i) {
            if (i) out << ',';
            out << escape_cell(record[i]);
        }
        out << '\n';
    }
    if (!out) throw Error("write failed for " + file.string());
}

} // namespace ets::csv
