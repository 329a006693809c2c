#include "metaschwarz/error.hpp"

namespace metaschwarz {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::StencilOutsideDisk: return "StencilOutsideDisk";
    case Errc::NonFinite: return "NonFinite";
    case Errc::NonConvergent: return "NonConvergent";
    case Errc::Divergent: return "Divergent";
    case Errc::FitResidualTooLarge: return "FitResidualTooLarge";
    case Errc::IllConditioned: return "IllConditioned";
    case Errc::ProductNotIdentity: return "ProductNotIdentity";
    case Errc::PairingMismatch: return "PairingMismatch";
    case Errc::PsiNotRealAtZero: return "PsiNotRealAtZero";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::Schema: return "Schema";
  }
  return "Unknown";
}

}  // namespace metaschwarz
