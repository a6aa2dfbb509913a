#pragma once

// Line-delimited machine-readable report documents.
//
//   schema_version: 1
//   environment.<TOLERANCE>: <value>
//   report:
//   <field>: <value>
//   ...
//   end
//
// Numbers are written with 17 significant digits so they read back bit-exact.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tpc/attacks.hpp"
#include "tpc/tolerances.hpp"

namespace tpc {

struct ReportDocument {
    std::string schema_version = "1";
    std::vector<std::pair<std::string, double>> environment;
    std::vector<AttackReport> reports;

    static ReportDocument with_current_environment(std::vector<AttackReport> reports);
    friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

std::string serialize(const ReportDocument& doc);
// Throws ParseError.
ReportDocument parse_report_document(std::string_view text);

std::string format_number(double v);

// Human-readable block for one report.
std::string render_report(const AttackReport& r);

}  // namespace tpc
