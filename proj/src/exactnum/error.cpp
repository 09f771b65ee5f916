#include "bratteli/error.hpp"

namespace bratteli {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownLetter: return "UnknownLetter";
    case ErrorKind::EmptyRule: return "EmptyRule";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::PeriodicDetected: return "PeriodicDetected";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::NoRootAboveOne: return "NoRootAboveOne";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::IllegalCollarProduced: return "IllegalCollarProduced";
    case ErrorKind::UnpairedExtreme: return "UnpairedExtreme";
    case ErrorKind::IncompatibleHorizontal: return "IncompatibleHorizontal";
    case ErrorKind::BadPath: return "BadPath";
    case ErrorKind::BadFormat: return "BadFormat";
    case ErrorKind::Io: return "Io";
    }
    return "Error";
}

}  // namespace bratteli
