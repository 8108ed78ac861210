#pragma once

#include <stdexcept>
#include <string>

namespace umbra {

// Error taxonomy shared by all modules. The `code` string is stable and
// machine-checkable; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define UMBRA_ERROR_TYPE(Name)                                    \
    class Name : public Error {                                   \
    public:                                                       \
        explicit Name(const std::string& msg) : Error(#Name, msg) {} \
    }

UMBRA_ERROR_TYPE(NonUnitDivisor);
UMBRA_ERROR_TYPE(NonzeroConstantTerm);
UMBRA_ERROR_TYPE(BadLowestTerms);
UMBRA_ERROR_TYPE(BadConstantTerm);
UMBRA_ERROR_TYPE(BadLeadingCoefficient);
UMBRA_ERROR_TYPE(BadValuation);
UMBRA_ERROR_TYPE(InconsistentSystem);
UMBRA_ERROR_TYPE(InsufficientTable);
UMBRA_ERROR_TYPE(LemmaViolation);
UMBRA_ERROR_TYPE(NonzeroRemainder);
UMBRA_ERROR_TYPE(WindowTooSmall);
UMBRA_ERROR_TYPE(RatioValuationError);
UMBRA_ERROR_TYPE(PreconditionViolated);
UMBRA_ERROR_TYPE(OrderExhausted);
UMBRA_ERROR_TYPE(NotBinomial);
UMBRA_ERROR_TYPE(SyntaxError);
UMBRA_ERROR_TYPE(UnknownAtom);

#undef UMBRA_ERROR_TYPE

} // namespace umbra
