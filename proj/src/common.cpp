#include "c2ep/common.hpp"

namespace c2ep {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::MalformedPng: return "MalformedPng";
    case Errc::NotGrayscale8: return "NotGrayscale8";
    case Errc::QuantizationViolation: return "QuantizationViolation";
    case Errc::RangeViolation: return "RangeViolation";
    case Errc::ValueOutOfRange: return "ValueOutOfRange";
    case Errc::BlockMisalignment: return "BlockMisalignment";
    case Errc::TruncatedStream: return "TruncatedStream";
    case Errc::CountMismatch: return "CountMismatch";
    case Errc::MalformedDigits: return "MalformedDigits";
    case Errc::SymbolOutOfAlphabet: return "SymbolOutOfAlphabet";
    case Errc::CorruptStream: return "CorruptStream";
    case Errc::BadHeader: return "BadHeader";
    case Errc::BadConfig: return "BadConfig";
    case Errc::IoError: return "IoError";
    case Errc::VerificationFailure: return "VerificationFailure";
  }
  return "UnknownError";
}

void raise(Errc code, const std::string& what) { throw CodecError(code, what); }

}  // namespace c2ep
