#include "thresh/cli/report_io.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace thresh::cli {

using nlohmann::json;

namespace {

json number(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  return v;
}

double number_from(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "NaN") return std::numeric_limits<double>::quiet_NaN();
    if (s == "Infinity") return std::numeric_limits<double>::infinity();
    if (s == "-Infinity") return -std::numeric_limits<double>::infinity();
  }
  throw std::runtime_error("report field " + field + ": expected a number");
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

json to_json(const VerificationReport& r) {
  json params = json::object();
  for (const auto& [k, v] : r.params_echo) params[k] = number(v);
  return json{{"check_name", r.check_name},
              {"params_echo", params},
              {"samples", r.samples},
              {"worst_margin", number(r.worst_margin)},
              {"onset_radius", r.onset_radius ? number(*r.onset_radius) : json(nullptr)},
              {"pass", r.pass},
              {"excluded_points", r.excluded_points},
              {"notes", r.notes}};
}

VerificationReport report_from_json(const json& j) {
  VerificationReport r;
  r.check_name = j.at("check_name").get<std::string>();
  for (const auto& [k, v] : j.at("params_echo").items()) r.params_echo[k] = number_from(v, k);
  r.samples = j.at("samples").get<std::size_t>();
  r.worst_margin = number_from(j.at("worst_margin"), "worst_margin");
  if (!j.at("onset_radius").is_null()) r.onset_radius = number_from(j.at("onset_radius"), "onset_radius");
  r.pass = j.at("pass").get<bool>();
  r.excluded_points = j.at("excluded_points").get<std::size_t>();
  r.notes = j.at("notes").get<std::string>();
  return r;
}

json report_document(const std::vector<VerificationReport>& reports) {
  json body = json::array();
  for (const auto& r : reports) body.push_back(to_json(r));
  return json{{"metadata", {{"generated_at", utc_timestamp()}, {"tool", "thresh"}}}, {"reports", body}};
}

void write_reports_csv(std::ostream& os, const std::vector<VerificationReport>& reports) {
  os << "check_name,samples,worst_margin,onset_radius,pass\n";
  for (const auto& r : reports) {
    os << r.check_name << ',' << r.samples << ',' << csv_double(r.worst_margin) << ','
       << (r.onset_radius ? csv_double(*r.onset_radius) : "") << ',' << (r.pass ? "true" : "false")
       << '\n';
  }
}

void write_reports(std::ostream& os, const std::vector<VerificationReport>& reports,
                   OutputFormat format) {
  if (format == OutputFormat::csv)
    write_reports_csv(os, reports);
  else
    os << report_document(reports).dump(2) << '\n';
}

void emit_report(const std::vector<VerificationReport>& reports, OutputFormat format,
                 const std::string& path) {
  if (path.empty()) {
    write_reports(std::cout, reports, format);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write_reports(f, reports, format);
  f.flush();
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::vector<VerificationReport> parse_reports(const std::string& text) {
  const json j = json::parse(text);
  const json& body = j.is_object() ? j.at("reports") : j;
  if (!body.is_array()) throw std::runtime_error("expected an array of reports");
  std::vector<VerificationReport> out;
  for (const auto& r : body) out.push_back(report_from_json(r));
  return out;
}

std::vector<VerificationReport> load_reports(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_reports(ss.str());
}

void write_sample_csv(std::ostream& os, const std::vector<helium::SampleRecord>& records) {
  os << "r1,r2,cos_theta,quantity,margin\n" << std::setprecision(17);
  for (const auto& r : records)
    os << r.r1 << ',' << r.r2 << ',' << r.cos_theta << ',' << r.quantity << ',' << r.margin << '\n';
}

}  // namespace thresh::cli
