#ifndef HAUPT_ERROR_HPP
#define HAUPT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace haupt {

enum class Errc {
    EmptyWindow,
    ZeroLeadingCoefficient,
    NonPIntegral,
    FractionalOffset,
    BadWeight,
    NotExactDivisor,
    IrrationalScalar,
    BadGroup,
    OddWeight,
    Malformed,
    InvariantViolation,
    RootMismatch,
    FileError,
    DuplicateSymbol,
    MissingCatalogEntry,
    PrecisionExhausted,
    HypothesisViolated,
    UnknownDatum,
    OutOfRange,
    OrthogonalityFailure,
    PowerMapInconsistent,
    IrrationalResidue,
};

const char *errc_name(Errc c);

class Error : public std::runtime_error
{
public:
    Error(Errc code, const std::string &what);
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string &what);

} // namespace haupt

#endif
