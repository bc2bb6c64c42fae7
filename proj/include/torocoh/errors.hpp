#pragma once

#include <stdexcept>
#include <string>

namespace torocoh {

enum class Errc {
    uncertifiable,
    nonconvergent,
    not_algebraic,
    non_integer_p,
    singular_b,
    undecided_tie,
    uncertified,
    division_undecided,
    mixed_field,
    not_invertible,
    exponent_overflow,
    invalid_input,
    precondition,
};

inline const char* to_string(Errc code) {
    switch (code) {
    case Errc::uncertifiable: return "UNCERTIFIABLE";
    case Errc::nonconvergent: return "NONCONVERGENT";
    case Errc::not_algebraic: return "NOT_ALGEBRAIC";
    case Errc::non_integer_p: return "NON_INTEGER_P";
    case Errc::singular_b: return "SINGULAR_B";
    case Errc::undecided_tie: return "UNDECIDED_TIE";
    case Errc::uncertified: return "UNCERTIFIED";
    case Errc::division_undecided: return "DIVISION_UNDECIDED";
    case Errc::mixed_field: return "MIXED_FIELD";
    case Errc::not_invertible: return "NOT_INVERTIBLE";
    case Errc::exponent_overflow: return "EXPONENT_OVERFLOW";
    case Errc::invalid_input: return "INVALID_INPUT";
    case Errc::precondition: return "PRECONDITION";
    }
    return "UNKNOWN";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace torocoh
