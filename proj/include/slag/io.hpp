#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "slag/geometry.hpp"

namespace slag::io {

using Json = nlohmann::ordered_json;

/// Decimal text with 17 significant digits.
std::string fmt(double x);

Json cubic_to_json(const HarmonicCubic& h);
/// Reads {"coeffs": [10 numbers]}; ValidationError on any malformation.
HarmonicCubic cubic_from_json(const Json& j);
HarmonicCubic cubic_from_text(const std::string& text);

Json normal_form_to_json(const NormalFormResult& nf);

std::vector<std::string> point_report_columns();
std::string point_report_csv_header();
std::string point_report_csv_row(const PointReport& r);
std::string point_reports_csv(const std::vector<PointReport>& rows);
/// Parses a table by header names; extra columns are ignored.
std::vector<PointReport> parse_point_reports_csv(const std::string& text);

Json point_report_to_json(const PointReport& r);
PointReport point_report_from_json(const Json& j);

/// RFC 4180 style splitting of one CSV line.
std::vector<std::string> split_csv_line(const std::string& line);
std::string csv_escape(const std::string& field);

/// Parses "a,b,c" into exactly n finite numbers.
std::vector<double> parse_list(const std::string& text, size_t n, const std::string& what);

}  // namespace slag::io
