#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "fredsing/config.hpp"
#include "fredsing/kind.hpp"

namespace fredsing {

// Process exit codes.
inline constexpr int kExitDecisive = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitIndeterminate = 2;
inline constexpr int kExitCheckFailed = 3;

struct OutputOptions {
  bool machine = false;  // single-line JSON
  bool timing = false;   // add wall_time_s to the report
};

// Each command writes its report to config.output_path (or `out` when empty),
// diagnostics to `err`, and returns the exit code. Library errors are caught
// and mapped to kExitError.
int cmd_classify(const AnalysisConfig& config, const OutputOptions& output, std::ostream& out,
                 std::ostream& err);
int cmd_verify(const AnalysisConfig& config, const OutputOptions& output, std::ostream& out,
               std::ostream& err);
int cmd_strata(const AnalysisConfig& config, const OutputOptions& output, std::ostream& out,
               std::ostream& err);
int cmd_bvp(const AnalysisConfig& config, const OutputOptions& output, std::ostream& out,
            std::ostream& err);

struct GalleryListOptions {
  std::optional<Kind> kind;   // filter on the expected kind
  std::optional<std::string> name;
  bool machine = false;       // one JSON record per line
  bool check = false;         // classify every fixture and compare
  int k_cap = kDefaultKCap;
  Tolerances tol;
};

int cmd_gallery(const GalleryListOptions& options, std::ostream& out, std::ostream& err);

}  // namespace fredsing
