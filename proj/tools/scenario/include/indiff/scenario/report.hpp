#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "indiff/scenario/config.hpp"

namespace indiff::scenario {

using Value = std::variant<double, long, bool, std::string>;

// One long-format row: scenario_id, record, n, key, value.
struct Row {
  std::string scenario_id;
  long record = 0;
  std::optional<long> n;
  std::string key;
  Value value;
};

class Report {
 public:
  // Rows added through a Record share its record number and n.
  class Record {
   public:
    Record& add(const std::string& key, Value value);

   private:
    friend class Report;
    Record(Report& report, std::string id, long number, std::optional<long> n)
        : report_(report), id_(std::move(id)), number_(number), n_(n) {}
    Report& report_;
    std::string id_;
    long number_;
    std::optional<long> n_;
  };

  Record record(const std::string& scenario_id, std::optional<long> n = std::nullopt);

  const std::vector<Row>& rows() const noexcept { return rows_; }
  long records() const noexcept { return next_; }
  bool empty() const noexcept { return rows_.empty(); }

 private:
  std::vector<Row> rows_;
  long next_ = 0;
};

// Full round-trip precision (%.17g); non-finite values print as nan, inf, -inf.
std::string format_value(const Value& v);

// CSV always starts with the header row, even for an empty report.
void write_csv(const Report& report, std::ostream& out);
void write_jsonl(const Report& report, std::ostream& out);
void write_report(const Report& report, Format format, std::ostream& out);

// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace indiff::scenario
