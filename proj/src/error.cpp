#include "keypoly/error.hpp"

namespace keypoly {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UndefinedDifference: return "UndefinedDifference";
    case ErrorKind::UndefinedProduct: return "UndefinedProduct";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::NoEventualMinimizer: return "NoEventualMinimizer";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::DegreeBound: return "DegreeBound";
    case ErrorKind::InvalidChain: return "InvalidChain";
    case ErrorKind::InvalidScenario: return "InvalidScenario";
    case ErrorKind::HorizonExhausted: return "HorizonExhausted";
    case ErrorKind::CertificateFailed: return "CertificateFailed";
    case ErrorKind::VacuouslyTrue: return "VacuouslyTrue";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace keypoly
