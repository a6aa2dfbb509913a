#include "tpc/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "tpc/funcspec.hpp"

namespace tpc {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '\\') out += "\\\\";
        else if (c == '\n') out += "\\n";
        else out += c;
    }
    return out;
}

std::string unescape(const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\\' && i + 1 < s.size()) {
            out += s[i + 1] == 'n' ? '\n' : s[i + 1];
            ++i;
        } else {
            out += s[i];
        }
    }
    return out;
}

double parse_number(std::size_t line, const std::string& s) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') throw ParseError(line, "'" + s + "' is not a number");
    return v;
}

std::vector<double> parse_list(std::size_t line, const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_number(line, item));
    return out;
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ReportDocument ReportDocument::with_current_environment(std::vector<AttackReport> reports) {
    ReportDocument doc;
    doc.environment = tolerances().entries();
    doc.reports = std::move(reports);
    return doc;
}

std::string serialize(const ReportDocument& doc) {
    std::ostringstream os;
    os << "schema_version: " << doc.schema_version << '\n';
    for (const auto& [name, value] : doc.environment) os << "environment." << name << ": " << format_number(value) << '\n';
    for (const auto& r : doc.reports) {
        os << "report:\n"
           << "function_id: " << r.function_id << '\n'
           << "scenario: " << to_string(r.scenario) << '\n'
           << "prior: ";
        for (std::size_t j = 0; j < r.prior.size(); ++j) os << (j ? "," : "") << format_number(r.prior[j]);
        os << '\n'
           << "input_used: " << r.input_used << '\n'
           << "p_honest: " << format_number(r.p_honest) << '\n'
           << "p_attack: " << format_number(r.p_attack) << '\n'
           << "advantage: " << format_number(r.advantage) << '\n'
           << "p_attack_optimized: " << (r.p_attack_optimized ? format_number(*r.p_attack_optimized) : "none") << '\n'
           << "certified: " << (r.certified ? "true" : "false") << '\n'
           << "residual_stationarity: " << format_number(r.residuals.stationarity) << '\n'
           << "residual_min_eigenvalue: " << format_number(r.residuals.min_eigenvalue) << '\n'
           << "residual_antihermitian: " << format_number(r.residuals.antihermitian) << '\n'
           << "notes: " << escape(r.notes) << '\n'
           << "end\n";
    }
    return os.str();
}

ReportDocument parse_report_document(std::string_view text) {
    ReportDocument doc;
    doc.schema_version.clear();
    std::istringstream is{std::string(text)};
    std::string line;
    std::size_t number = 0;
    AttackReport* cur = nullptr;
    bool in_report = false;
    while (std::getline(is, line)) {
        ++number;
        if (line.empty()) continue;
        if (line == "report:") {
            if (in_report) throw ParseError(number, "nested report");
            doc.reports.emplace_back();
            cur = &doc.reports.back();
            in_report = true;
            continue;
        }
        if (line == "end") {
            if (!in_report) throw ParseError(number, "'end' outside a report");
            in_report = false;
            continue;
        }
        const auto sep = line.find(": ");
        const std::string key = line.substr(0, sep);
        const std::string value = sep == std::string::npos ? std::string() : line.substr(sep + 2);
        if (sep == std::string::npos && line.back() != ':') throw ParseError(number, "expected 'key: value'");
        if (!in_report) {
            if (key == "schema_version") {
                if (value != "1") throw ParseError(number, "unsupported schema_version '" + value + "'");
                doc.schema_version = value;
            }
            else if (key.rfind("environment.", 0) == 0) doc.environment.emplace_back(key.substr(12), parse_number(number, value));
            else throw ParseError(number, "unknown document field '" + key + "'");
            continue;
        }
        auto& r = *cur;
        if (key == "function_id") r.function_id = value;
        else if (key == "scenario") {
            try {
                r.scenario = scenario_from_string(value);
            } catch (const std::invalid_argument& e) {
                throw ParseError(number, e.what());
            }
        }
        else if (key == "prior") r.prior = value.empty() ? std::vector<double>{} : parse_list(number, value);
        else if (key == "input_used") r.input_used = value;
        else if (key == "p_honest") r.p_honest = parse_number(number, value);
        else if (key == "p_attack") r.p_attack = parse_number(number, value);
        else if (key == "advantage") r.advantage = parse_number(number, value);
        else if (key == "p_attack_optimized") {
            if (value == "none") r.p_attack_optimized.reset();
            else r.p_attack_optimized = parse_number(number, value);
        }
        else if (key == "certified") {
            if (value != "true" && value != "false") throw ParseError(number, "certified must be true or false");
            r.certified = value == "true";
        }
        else if (key == "residual_stationarity") r.residuals.stationarity = parse_number(number, value);
        else if (key == "residual_min_eigenvalue") r.residuals.min_eigenvalue = parse_number(number, value);
        else if (key == "residual_antihermitian") r.residuals.antihermitian = parse_number(number, value);
        else if (key == "notes") r.notes = unescape(value);
        else throw ParseError(number, "unknown report field '" + key + "'");
    }
    if (in_report) throw ParseError(number, "unterminated report");
    if (doc.schema_version.empty()) throw ParseError(1, "missing schema_version");
    return doc;
}

std::string render_report(const AttackReport& r) {
    std::ostringstream os;
    os << "function:   " << r.function_id << '\n'
       << "scenario:   " << to_string(r.scenario) << '\n'
       << "prior:      ";
    for (std::size_t j = 0; j < r.prior.size(); ++j) os << (j ? ", " : "") << format_number(r.prior[j]);
    os << '\n'
       << "input:      " << r.input_used << '\n'
       << "p_honest:   " << format_number(r.p_honest) << '\n'
       << "p_attack:   " << format_number(r.p_attack) << '\n';
    if (r.p_attack_optimized) os << "p_optimized: " << format_number(*r.p_attack_optimized) << '\n';
    os << "advantage:  " << format_number(r.advantage) << '\n'
       << "certified:  " << (r.certified ? "yes" : "no") << " (stationarity " << format_number(r.residuals.stationarity)
       << ", min eigenvalue " << format_number(r.residuals.min_eigenvalue) << ", anti-Hermitian "
       << format_number(r.residuals.antihermitian) << ")\n";
    if (!r.notes.empty()) os << "notes:      " << r.notes << '\n';
    return os.str();
}

}  // namespace tpc
