#ifndef BETACOAL_REPORT_HPP_
#define BETACOAL_REPORT_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace betacoal {

enum class CompareOp { less, less_equal, greater_equal, equal };

const char* to_string(CompareOp op);

/// statistic <op> threshold; the verdict is recomputed from the two values.
struct Check {
  std::string name;
  std::string statistic;
  CompareOp op = CompareOp::less_equal;
  std::string threshold;
  bool pass = false;
};

struct RawRow {
  std::int64_t replicate = 0;
  std::string stat_name;
  double value = 0.0;
};

struct ExperimentReport {
  std::string experiment_id;
  std::optional<double> alpha;  // empty for experiments over an alpha grid
  std::uint64_t seed = 0;
  std::int64_t n = 0;
  std::int64_t replicates = 0;
  std::vector<std::pair<std::string, double>> statistics;
  std::vector<std::pair<std::string, double>> thresholds;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  bool pass = false;
  double runtime_seconds = 0.0;
  std::vector<RawRow> raw;

  void add_statistic(const std::string& name, double value);
  void add_threshold(const std::string& name, double value);
  double statistic(const std::string& name) const;
  double threshold(const std::string& name) const;
  /// Registers a check; call evaluate() once all values are in.
  void add_check(const std::string& name, const std::string& statistic, CompareOp op,
                 const std::string& threshold);
  /// Applies overrides to registered thresholds, then recomputes every check
  /// and the overall verdict. Throws std::invalid_argument on an override
  /// naming an unknown threshold.
  void evaluate(const std::map<std::string, double>& overrides = {});
};

bool compare(double statistic, CompareOp op, double threshold);

/// Decimal text with 17 significant digits.
std::string format_real(double x);

/// Header fields carried by every output.
struct OutputHeader {
  std::string version;
  std::string command;
  std::optional<double> alpha;
  std::string alpha_text;  // symbolic spelling when the alpha came from a tag
  std::uint64_t seed = 0;
};

/// "# betacoal <version> | command: ... | alpha: ... | seed: ..." line.
void write_comment_header(std::ostream& out, const OutputHeader& header);

void write_report_json(std::ostream& out, const ExperimentReport& report, int indent = 0,
                       bool include_runtime = true);

/// {"header": {...}, "reports": [...], "pass": bool}.
void write_reports_json(std::ostream& out, const OutputHeader& header,
                        const std::vector<ExperimentReport>& reports, bool include_runtime = true);

/// One row per check: experiment,check,statistic,value,op,threshold,limit,pass.
void write_checks_csv(std::ostream& out, const std::vector<ExperimentReport>& reports);

/// replicate,stat_name,value.
void write_raw_csv(std::ostream& out, const ExperimentReport& report);

}  // namespace betacoal

#endif  // BETACOAL_REPORT_HPP_
