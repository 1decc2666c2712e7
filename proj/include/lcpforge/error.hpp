#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lcpforge {

enum class ErrorKind {
    InvalidInput,
    Parse,
    NonMonic,
    DimensionMismatch,
    DivisionByZero,
    ReduciblePolynomial,
    InconclusiveIrreducibility,
    NotNormal,
    NotCyclic,
    NeedsEscalation,
    PrecisionExhausted,
    NonCommuting,
    Defective,
    IndistinctEigenbasis,
    J1Violation,
    NoFunctional,
    NoPositiveScale,
    InvarianceFailed,
    EquivarianceMismatch,
    IndependentUnitsNotFound,
    SpectralHypothesis,
    AdmissibleQ,
    NotFullLattice,
    NotOtField,
    GoldenMismatch,
    Schema,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::Parse: return "parse-error";
        case ErrorKind::NonMonic: return "non-monic";
        case ErrorKind::DimensionMismatch: return "dimension-mismatch";
        case ErrorKind::DivisionByZero: return "division-by-zero";
        case ErrorKind::ReduciblePolynomial: return "reducible-polynomial";
        case ErrorKind::InconclusiveIrreducibility: return "inconclusive-witness";
        case ErrorKind::NotNormal: return "not-normal";
        case ErrorKind::NotCyclic: return "not-cyclic";
        case ErrorKind::NeedsEscalation: return "needs-escalation";
        case ErrorKind::PrecisionExhausted: return "precision-exhausted";
        case ErrorKind::NonCommuting: return "non-commuting";
        case ErrorKind::Defective: return "defective-generator";
        case ErrorKind::IndistinctEigenbasis: return "indistinct-eigenbasis";
        case ErrorKind::J1Violation: return "J1-violation";
        case ErrorKind::NoFunctional: return "no-functional";
        case ErrorKind::NoPositiveScale: return "no-positive-scale";
        case ErrorKind::InvarianceFailed: return "invariance-failed";
        case ErrorKind::EquivarianceMismatch: return "equivariance-mismatch";
        case ErrorKind::IndependentUnitsNotFound: return "independent-units-not-found";
        case ErrorKind::SpectralHypothesis: return "spectral-hypothesis";
        case ErrorKind::AdmissibleQ: return "inadmissible-q";
        case ErrorKind::NotFullLattice: return "not-full-lattice";
        case ErrorKind::NotOtField: return "not-an-OT-field";
        case ErrorKind::GoldenMismatch: return "golden-mismatch";
        case ErrorKind::Schema: return "schema-error";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace lcpforge
