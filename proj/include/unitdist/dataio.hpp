#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "unitdist/dataset.hpp"
#include "unitdist/gof.hpp"
#include "unitdist/mle.hpp"

namespace unitdist {

struct DataSource {
  enum class Kind { file, builtin, inline_list };
  Kind kind;
  std::string locator;  // path, registered name, or comma-separated values
};

// file: one numeric value per line, or a single-column CSV whose first line
// may be a non-numeric header. Whitespace is trimmed, blank lines skipped,
// LF and CRLF both accepted. Errors carry 1-based line numbers.
Dataset load(const DataSource& source);

// Same parsing rules, for an already-open stream (stdin support).
Dataset load_stream(std::istream& in, const std::string& label);

std::vector<std::string> builtin_dataset_names();
Dataset builtin_dataset(const std::string& name);
// Provenance and data-entry caveats for a builtin dataset.
std::string builtin_dataset_note(const std::string& name);

// One value per line at full precision; load() reproduces the dataset exactly.
std::string export_dataset_csv(const Dataset& data);

struct ReportEntry {
  std::string label;
  std::optional<FitResult> fit;
  std::optional<GofReport> gof;
  std::optional<std::string> error;  // set when the fit could not be produced
};

enum class ReportFormat { text_table, json, csv };

// Renders fits side by side, one column per entry. Row order: parameters,
// vcov upper triangle, LL, information criteria, the 5% decision, KS p-value
// and the three test statistics. Absent cells render "n/a" in text, null in
// json, empty in csv.
std::string export_report(const std::vector<ReportEntry>& reports, ReportFormat format);

}  // namespace unitdist
