#pragma once

#include <stdexcept>
#include <string>

namespace isl {

/// Base class of every error raised by the library. The kind string is the
/// stable, machine-readable name used in CLI diagnostics and JSON output.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define ISL_DEFINE_ERROR(Name)                                                 \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name, what) {}         \
    }

/// Malformed machine, grammar, spec or file.
ISL_DEFINE_ERROR(InvalidInput);
/// A search hit its configured cap before it was exhaustive. Never a wrong answer.
ISL_DEFINE_ERROR(LimitExceeded);
ISL_DEFINE_ERROR(EmptyLanguage);
ISL_DEFINE_ERROR(UnbalancedRun);
ISL_DEFINE_ERROR(PreconditionViolated);
ISL_DEFINE_ERROR(SourceMismatch);
ISL_DEFINE_ERROR(Inconclusive);
ISL_DEFINE_ERROR(NotJointlyWellNested);
ISL_DEFINE_ERROR(NoCrossing);
ISL_DEFINE_ERROR(OracleFailure);
ISL_DEFINE_ERROR(Overflow);
ISL_DEFINE_ERROR(UnknownExample);

#undef ISL_DEFINE_ERROR

} // namespace isl
