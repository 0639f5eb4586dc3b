#include "indiff/scenario/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

#include <json.hpp>

namespace indiff::scenario {

Report::Record& Report::Record::add(const std::string& key, Value value) {
  report_.rows_.push_back({id_, number_, n_, key, std::move(value)});
  return *this;
}

Report::Record Report::record(const std::string& scenario_id, std::optional<long> n) {
  return Record(*this, scenario_id, next_++, n);
}

std::string format_value(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) {
    if (std::isnan(*d)) return "nan";
    if (std::isinf(*d)) return *d > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", *d);
    return buf;
  }
  if (const auto* l = std::get_if<long>(&v)) return std::to_string(*l);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::get<std::string>(v);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_csv(const Report& report, std::ostream& out) {
  out << "scenario_id,record,n,key,value\n";
  for (const auto& r : report.rows()) {
    out << csv_field(r.scenario_id) << ',' << r.record << ',';
    if (r.n) out << *r.n;
    out << ',' << csv_field(r.key) << ',' << csv_field(format_value(r.value)) << '\n';
  }
}

void write_jsonl(const Report& report, std::ostream& out) {
  for (const auto& r : report.rows()) {
    nlohmann::ordered_json j;
    j["scenario_id"] = r.scenario_id;
    j["record"] = r.record;
    j["n"] = r.n ? nlohmann::ordered_json(*r.n) : nlohmann::ordered_json(nullptr);
    j["key"] = r.key;
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, double>) {
            // JSON has no non-finite numbers
            if (std::isfinite(x)) {
              j["value"] = x;
            } else {
              j["value"] = format_value(x);
            }
          } else {
            j["value"] = x;
          }
        },
        r.value);
    out << j.dump() << '\n';
  }
}

void write_report(const Report& report, Format format, std::ostream& out) {
  if (format == Format::csv) {
    write_csv(report, out);
  } else {
    write_jsonl(report, out);
  }
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace indiff::scenario
