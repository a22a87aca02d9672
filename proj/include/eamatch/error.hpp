#ifndef EAMATCH_ERROR_HPP
#define EAMATCH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace eamatch {

// Wrong API usage (bad index, malformed alignment, missing flag).
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Inconsistent configuration (e.g. embedding dimension mismatch).
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Bad input data: non-finite scores, duplicate ids, duplicate triples.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Unparseable input file; carries file and line context in the message.
class ParseError : public DataError {
public:
    ParseError(const std::string& file, std::size_t line, const std::string& what)
        : DataError(file + ":" + std::to_string(line) + ": " + what) {}
};

} // namespace eamatch

#endif
