#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace vchain::csv {

struct Row {
    int line = 1;                  // 1-based line of the row's first character
    std::vector<std::string> fields;
    std::vector<int> columns;      // 1-based character column of each field
};

/// RFC 4180-style reader: comma separated, optional double-quote quoting,
/// LF or CRLF endings. Blank lines are skipped. Returns false and sets
/// `error`/`error_line`/`error_column` on an unterminated quote.
struct ReadResult {
    std::vector<Row> rows;
    bool ok = true;
    std::string error;
    int error_line = 0;
    int error_column = 0;
};

ReadResult read(std::string_view text);

/// Quotes the field only when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

std::string join(const std::vector<std::string>& fields);

} // namespace vchain::csv
