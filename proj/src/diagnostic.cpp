#include "vchain/diagnostic.hpp"
#include "vchain/error.hpp"

#include <algorithm>
#include <sstream>

namespace vchain {

const char* to_string(Severity s) {
    return s == Severity::Error ? "ERROR" : "WARNING";
}

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotFound: return "NOT_FOUND";
    case ErrorCode::Ambiguous: return "AMBIGUOUS";
    case ErrorCode::EmptyCategory: return "EMPTY_CATEGORY";
    case ErrorCode::ContextMismatch: return "CONTEXT_MISMATCH";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    }
    return "UNKNOWN";
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.is_error(); });
}

std::string format_diagnostic(const Diagnostic& d, const std::string& file) {
    std::ostringstream os;
    os << to_string(d.severity) << ' ';
    if (d.pos) {
        os << (file.empty() ? "<input>" : file) << ':' << d.pos->line << ':' << d.pos->column;
    } else {
        os << (d.path.empty() ? "model" : d.path);
    }
    os << ' ' << d.message;
    return os.str();
}

} // namespace vchain
