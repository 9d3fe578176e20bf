#pragma once

#include <stdexcept>
#include <string>

namespace teamdim {

enum class ErrorKind {
    BaseMismatch,
    NotAMember,
    NotASubfamily,
    EmptyFamily,
    UndefinedChar,
    CapExceeded,
    Budget,
    Parse,
    UnboundVariable,
    Arity,
    IndexClash,
    Unsupported,
    Input,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// parse errors carry a 1-based position
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(ErrorKind::Parse, what + " at " + std::to_string(line) + ":" + std::to_string(column)),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace teamdim
