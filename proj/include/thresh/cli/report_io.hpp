#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "thresh/cli/config.hpp"
#include "thresh/helium/checks.hpp"
#include "thresh/report.hpp"

namespace thresh::cli {

/// Report fields as JSON. Non-finite numbers become the strings
/// "Infinity", "-Infinity" and "NaN" so that documents stay valid JSON and
/// round-trip exactly.
nlohmann::json to_json(const VerificationReport& r);
VerificationReport report_from_json(const nlohmann::json& j);

/// {"metadata": {"generated_at": ..., "tool": "thresh"}, "reports": [...]}.
/// The "reports" body is byte-stable for equal inputs; only metadata varies.
nlohmann::json report_document(const std::vector<VerificationReport>& reports);

/// CSV with the fixed columns check_name,samples,worst_margin,onset_radius,pass.
void write_reports_csv(std::ostream& os, const std::vector<VerificationReport>& reports);

void write_reports(std::ostream& os, const std::vector<VerificationReport>& reports,
                   OutputFormat format);

/// Writes to `path`, or standard output when path is empty. I/O failures
/// throw std::runtime_error naming the path.
void emit_report(const std::vector<VerificationReport>& reports, OutputFormat format,
                 const std::string& path);

/// Accepts a report document or a bare array of reports.
std::vector<VerificationReport> parse_reports(const std::string& text);
std::vector<VerificationReport> load_reports(const std::string& path);

/// Columns r1,r2,cos_theta,quantity,margin.
void write_sample_csv(std::ostream& os, const std::vector<helium::SampleRecord>& records);

}  // namespace thresh::cli
