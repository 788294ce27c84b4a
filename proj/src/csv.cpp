#include "vchain/csv.hpp"

namespace vchain::csv {

ReadResult read(std::string_view text) {
    ReadResult result;
    std::size_t i = 0;
    int line = 1;
    int column = 1;

    auto bump = [&](char c) {
        ++i;
        if (c == '\n') {
            ++line;
            column = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            ++column;
        }
    };

    while (i < text.size()) {
        Row row;
        row.line = line;
        bool row_done = false;
        while (!row_done) {
            std::string field;
            row.columns.push_back(column);
            if (i < text.size() && text[i] == '"') {
                const int qline = line;
                const int qcol = column;
                bump('"');
                for (;;) {
                    if (i >= text.size()) {
                        result.ok = false;
                        result.error = "unterminated quoted field";
                        result.error_line = qline;
                        result.error_column = qcol;
                        return result;
                    }
                    const char c = text[i];
                    if (c == '"') {
                        if (i + 1 < text.size() && text[i + 1] == '"') {
                            field += '"';
                            bump(c);
                            bump(c);
                            continue;
                        }
                        bump(c);
                        break;
                    }
                    field += c;
                    bump(c);
                }
            }
            while (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
                field += text[i];
                bump(text[i]);
            }
            row.fields.push_back(std::move(field));
            if (i < text.size() && text[i] == ',') {
                bump(',');
                continue;
            }
            if (i < text.size() && text[i] == '\r') bump('\r');
            if (i < text.size() && text[i] == '\n') bump('\n');
            row_done = true;
        }
        const bool blank = row.fields.size() == 1 && row.fields.front().empty();
        if (!blank) result.rows.push_back(std::move(row));
    }
    return result;
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += escape(fields[i]);
    }
    return out;
}

} // namespace vchain::csv
