#pragma once

#include <stdexcept>
#include <string>

namespace toridouble {

class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define TORIDOUBLE_ERROR(Name)                                                 \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name, what) {}         \
    };

TORIDOUBLE_ERROR(SingularModulus)
TORIDOUBLE_ERROR(SingularMatrix)
TORIDOUBLE_ERROR(ShapeMismatch)
TORIDOUBLE_ERROR(InvalidTorus)
TORIDOUBLE_ERROR(DualityAssumptionViolated)
TORIDOUBLE_ERROR(NotSplit)
TORIDOUBLE_ERROR(InadmissibleD)
TORIDOUBLE_ERROR(NotPositiveDefinite)
TORIDOUBLE_ERROR(InvalidXi)
TORIDOUBLE_ERROR(InvalidBrane)
TORIDOUBLE_ERROR(InadmissibleSpec)
TORIDOUBLE_ERROR(NonTransversal)
TORIDOUBLE_ERROR(UnsupportedTriple)
TORIDOUBLE_ERROR(JNotPreserving)
TORIDOUBLE_ERROR(TruncationBudgetExceeded)
TORIDOUBLE_ERROR(ValidationError)

#undef TORIDOUBLE_ERROR

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& what)
        : Error("ParseError", "line " + std::to_string(line) + ", column " +
                                  std::to_string(column) + ": " + what),
          line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace toridouble
