#pragma once

#include <stdexcept>
#include <string>

namespace covstark {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define COVSTARK_DEFINE_ERROR(Name)                 \
    class Name : public Error {                     \
    public:                                         \
        explicit Name(const std::string& what)      \
            : Error(#Name ": " + what) {}           \
    }

COVSTARK_DEFINE_ERROR(DomainError);
COVSTARK_DEFINE_ERROR(BranchError);
COVSTARK_DEFINE_ERROR(ConvergenceError);
COVSTARK_DEFINE_ERROR(FrameRecoveryError);
COVSTARK_DEFINE_ERROR(SingularFrameError);
COVSTARK_DEFINE_ERROR(OutOfRMSError);
COVSTARK_DEFINE_ERROR(BasisNotClosedError);
COVSTARK_DEFINE_ERROR(StepOverflowError);
COVSTARK_DEFINE_ERROR(TailError);
COVSTARK_DEFINE_ERROR(ResolutionError);
COVSTARK_DEFINE_ERROR(ConfigError);

#undef COVSTARK_DEFINE_ERROR

} // namespace covstark
