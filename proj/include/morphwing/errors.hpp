#pragma once

#include <stdexcept>
#include <string>

namespace morphwing {

// Base for all toolkit errors. `kind()` is the stable class name used in
// CLI diagnostics and exit reporting.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define MORPHWING_ERROR_CLASS(Name)                              \
    class Name : public Error {                                  \
    public:                                                      \
        explicit Name(const std::string& what)                   \
            : Error(#Name, what) {}                              \
    }

// linkage
MORPHWING_ERROR_CLASS(NonPositiveLength);
MORPHWING_ERROR_CLASS(NeverAssemblable);
MORPHWING_ERROR_CLASS(Unassemblable);
MORPHWING_ERROR_CLASS(EmptySweep);
MORPHWING_ERROR_CLASS(NoFeasibleMapping);

// synthesis
MORPHWING_ERROR_CLASS(SingularSystem);
MORPHWING_ERROR_CLASS(ImaginaryCoupler);
MORPHWING_ERROR_CLASS(NegativeLink);

// aero
MORPHWING_ERROR_CLASS(StallExceeded);
MORPHWING_ERROR_CLASS(FlowRegimeViolation);
MORPHWING_ERROR_CLASS(ZeroDrag);

// morphology
MORPHWING_ERROR_CLASS(CriterionUnsatisfiable);

// config / cli
MORPHWING_ERROR_CLASS(ParseError);
MORPHWING_ERROR_CLASS(SchemaViolation);

#undef MORPHWING_ERROR_CLASS

}  // namespace morphwing
