#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace vchain {

struct SourcePos {
    int line = 1;
    int column = 1;

    friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

enum class Severity { Error, Warning };

const char* to_string(Severity s);

/// A parse diagnostic carries a source position; a semantic one carries a
/// model path such as "process:Order-to-Cash/step:Order/indicator:roles".
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string message;
    std::optional<SourcePos> pos;
    std::string path;

    bool is_error() const { return severity == Severity::Error; }
};

bool has_errors(const std::vector<Diagnostic>& diags);

/// "ERROR file:line:col message" or "ERROR path message".
std::string format_diagnostic(const Diagnostic& d, const std::string& file = {});

} // namespace vchain
