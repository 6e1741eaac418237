#pragma once

// Tabular experiment output: CSV with a header row, or a JSON array of row objects.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hexsum {

using ReportValue = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

struct ReportRow {
  std::vector<std::pair<std::string, ReportValue>> fields;

  ReportRow& set(std::string key, ReportValue value);
  /// monostate when the key is absent.
  const ReportValue& get(const std::string& key) const noexcept;
};

class Report {
public:
  void add(ReportRow row) { rows_.push_back(std::move(row)); }
  const std::vector<ReportRow>& rows() const noexcept { return rows_; }

  /// Column order is the order in which keys first appear.
  std::vector<std::string> columns() const;

  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;

private:
  std::vector<ReportRow> rows_;
};

/// %.17g, with inf/nan spelled out.
std::string format_double(double x);
std::string format_value(const ReportValue& v);

}  // namespace hexsum
