#pragma once

#include <stdexcept>
#include <string>

namespace qmzv {

enum class Errc {
    invalid_params,
    non_convergent,
    singular_parameter,
    not_admissible,
    up_on_empty,
    malformed_word,
    order_mismatch,
    non_admissible_monomial,
    syntax_error,
    not_bbbl,
    divergence_precondition,
    epsilon_not_validated,
    budget_exceeded,
};

const char* errc_name(Errc c);

/// Exception carrying a machine-checkable error kind alongside the message.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::invalid_params: return "InvalidParams";
        case Errc::non_convergent: return "NonConvergent";
        case Errc::singular_parameter: return "SingularParameter";
        case Errc::not_admissible: return "NotAdmissible";
        case Errc::up_on_empty: return "UpOnEmpty";
        case Errc::malformed_word: return "MalformedWord";
        case Errc::order_mismatch: return "OrderMismatch";
        case Errc::non_admissible_monomial: return "NonAdmissibleMonomial";
        case Errc::syntax_error: return "SyntaxError";
        case Errc::not_bbbl: return "NotBbbl";
        case Errc::divergence_precondition: return "DivergencePrecondition";
        case Errc::epsilon_not_validated: return "EpsilonNotValidated";
        case Errc::budget_exceeded: return "BudgetExceeded";
    }
    return "UnknownError";
}

}  // namespace qmzv
