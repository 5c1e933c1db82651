#pragma once

#include <stdexcept>
#include <string>

namespace polariton {

// Base of every failure the library reports. name() is the stable identifier
// surfaced by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define POLARITON_ERROR(Type)                                                  \
    struct Type : Error {                                                      \
        explicit Type(const std::string& what) : Error(#Type, what) {}         \
    }

POLARITON_ERROR(InvalidParams);
POLARITON_ERROR(DegenerateSpectrum);
POLARITON_ERROR(NonPositiveMode);
POLARITON_ERROR(SingularFrequency);
POLARITON_ERROR(TruncationWarning);
POLARITON_ERROR(StepUnstable);
POLARITON_ERROR(DegenerateSteadyState);
POLARITON_ERROR(NotStationary);
POLARITON_ERROR(BranchTrackingLost);
POLARITON_ERROR(GridTooCoarse);
POLARITON_ERROR(IoFailure);

#undef POLARITON_ERROR

} // namespace polariton
