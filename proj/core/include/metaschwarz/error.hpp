#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace metaschwarz {

enum class Errc {
  InvalidArgument,
  StencilOutsideDisk,
  NonFinite,
  NonConvergent,
  Divergent,
  FitResidualTooLarge,
  IllConditioned,
  ProductNotIdentity,
  PairingMismatch,
  PsiNotRealAtZero,
  VerificationFailed,
  Schema,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace metaschwarz
