#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace depthbench {

enum class Errc {
  invalid_parameter,
  invalid_kernel,
  unsupported_kind,
  missing_asset,
  empty_evaluation,
  invalid_depth,
  misaligned_cells,
  degenerate_baseline,
  degenerate_clean,
  missing_cells,
  missing_prediction,
  shape_mismatch,
  profile_mismatch,
  invalid_request,
  empty_input,
  version_mismatch,
  io_error,
  parse_error,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {}

  Errc code() const noexcept { return code_; }
  /// what() without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  Errc code_;
  std::string message_;
};

}  // namespace depthbench
