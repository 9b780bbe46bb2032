#include "sskg/error.hpp"

namespace sskg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Malformed: return "Malformed";
    case ErrorKind::NotSourceFree: return "NotSourceFree";
    case ErrorKind::MissingSquare: return "MissingSquare";
    case ErrorKind::SquareNotBijective: return "SquareNotBijective";
    case ErrorKind::CubeConditionFailed: return "CubeConditionFailed";
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::AxiomViolated: return "AxiomViolated";
    case ErrorKind::ConstructionFailed: return "ConstructionFailed";
    case ErrorKind::TooManyVertices: return "TooManyVertices";
    case ErrorKind::EmptyResult: return "EmptyResult";
    case ErrorKind::NotInLattice: return "NotInLattice";
    case ErrorKind::UnsupportedDescriptor: return "UnsupportedDescriptor";
    case ErrorKind::InvalidQuery: return "InvalidQuery";
    case ErrorKind::HypothesisUnverified: return "HypothesisUnverified";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::DanglingReference: return "DanglingReference";
  }
  return "Unknown";
}

}  // namespace sskg
