#pragma once

#include <stdexcept>
#include <string>

namespace unfolder {

/// Base class of every error raised by the library.
/// what() is "Name: detail"; detail() is the message without the prefix.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what), detail_(what) {}
    Error(const std::string& name, const std::string& detail)
        : std::runtime_error(name + ": " + detail), detail_(detail)
    {
    }

    const std::string& detail() const noexcept { return detail_; }

private:
    std::string detail_;
};

#define UNFOLDER_DEFINE_ERROR(Name)                \
    class Name : public Error {                    \
    public:                                        \
        explicit Name(const std::string& what)     \
            : Error(#Name, what) {}                \
    }

// jet
UNFOLDER_DEFINE_ERROR(NonpositiveBase);
UNFOLDER_DEFINE_ERROR(OrderExceeded);
// models
UNFOLDER_DEFINE_ERROR(DomainError);
UNFOLDER_DEFINE_ERROR(InvalidParameter);
// recognition
UNFOLDER_DEFINE_ERROR(NotOnSolutionSet);
UNFOLDER_DEFINE_ERROR(NoConvergence);
UNFOLDER_DEFINE_ERROR(SingularJacobian);
UNFOLDER_DEFINE_ERROR(WrongRegime);
UNFOLDER_DEFINE_ERROR(NotUnfoldable);
// continuation
UNFOLDER_DEFINE_ERROR(StartNotOnBranch);
UNFOLDER_DEFINE_ERROR(NotACrossing);
UNFOLDER_DEFINE_ERROR(DegenerateQuadratic);
// configuration / cli
UNFOLDER_DEFINE_ERROR(ConfigError);

#undef UNFOLDER_DEFINE_ERROR

}  // namespace unfolder
