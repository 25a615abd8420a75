#include "c2qf/errors.hpp"

namespace c2qf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::MixedFields: return "MixedFields";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::ZeroValuation: return "ZeroValuation";
    case ErrorCode::NegativeValuationResidue: return "NegativeValuationResidue";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroScale: return "ZeroScale";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::UnsupportedBase: return "UnsupportedBase";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::MalformedCertificate: return "MalformedCertificate";
    case ErrorCode::CertificateInvalid: return "CertificateInvalid";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::WrongField: return "WrongField";
    case ErrorCode::Internal: return "Internal";
  }
  return "Internal";
}

}  // namespace c2qf
