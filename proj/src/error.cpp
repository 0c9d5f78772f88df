#include "haupt/error.hpp"

namespace haupt {

const char *errc_name(Errc c)
{
    switch (c) {
    case Errc::EmptyWindow: return "EmptyWindow";
    case Errc::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case Errc::NonPIntegral: return "NonPIntegral";
    case Errc::FractionalOffset: return "FractionalOffset";
    case Errc::BadWeight: return "BadWeight";
    case Errc::NotExactDivisor: return "NotExactDivisor";
    case Errc::IrrationalScalar: return "IrrationalScalar";
    case Errc::BadGroup: return "BadGroup";
    case Errc::OddWeight: return "OddWeight";
    case Errc::Malformed: return "Malformed";
    case Errc::InvariantViolation: return "InvariantViolation";
    case Errc::RootMismatch: return "RootMismatch";
    case Errc::FileError: return "FileError";
    case Errc::DuplicateSymbol: return "DuplicateSymbol";
    case Errc::MissingCatalogEntry: return "MissingCatalogEntry";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::UnknownDatum: return "UnknownDatum";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::OrthogonalityFailure: return "OrthogonalityFailure";
    case Errc::PowerMapInconsistent: return "PowerMapInconsistent";
    case Errc::IrrationalResidue: return "IrrationalResidue";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string &what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
{
}

void fail(Errc code, const std::string &what) { throw Error(code, what); }

} // namespace haupt
