#ifndef NEIGHBOR2VEC_ERROR_HPP
#define NEIGHBOR2VEC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace neighbor2vec {

/// Coarse failure class. The CLI prints it as a machine-parseable prefix.
enum class ErrorCategory {
    io,
    parse,
    invalid_argument,
    numeric,
};

inline std::string_view to_string(ErrorCategory category) {
    switch (category) {
        case ErrorCategory::io: return "io";
        case ErrorCategory::parse: return "parse";
        case ErrorCategory::invalid_argument: return "invalid_argument";
        case ErrorCategory::numeric: return "numeric";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& message)
        : std::runtime_error(message), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw Error(ErrorCategory::invalid_argument, message);
    }
}

}

#endif
