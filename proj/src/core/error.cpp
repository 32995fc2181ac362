#include "depthbench/error.hpp"

namespace depthbench {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::invalid_parameter: return "invalid-parameter";
    case Errc::invalid_kernel: return "invalid-kernel";
    case Errc::unsupported_kind: return "unsupported-kind";
    case Errc::missing_asset: return "missing-asset";
    case Errc::empty_evaluation: return "empty-evaluation";
    case Errc::invalid_depth: return "invalid-depth";
    case Errc::misaligned_cells: return "misaligned-cells";
    case Errc::degenerate_baseline: return "degenerate-baseline";
    case Errc::degenerate_clean: return "degenerate-clean";
    case Errc::missing_cells: return "missing-cells";
    case Errc::missing_prediction: return "missing-prediction";
    case Errc::shape_mismatch: return "shape-mismatch";
    case Errc::profile_mismatch: return "profile-mismatch";
    case Errc::invalid_request: return "invalid-request";
    case Errc::empty_input: return "empty-input";
    case Errc::version_mismatch: return "version-mismatch";
    case Errc::io_error: return "io-error";
    case Errc::parse_error: return "parse-error";
  }
  return "unknown-error";
}

}  // namespace depthbench
