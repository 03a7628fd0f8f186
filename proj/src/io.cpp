#include "slag/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

namespace slag::io {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json cubic_to_json(const HarmonicCubic& h) {
  Json j;
  j["coeffs"] = h.coeffs();
  return j;
}

HarmonicCubic cubic_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("coeffs")) throw ValidationError("cubic JSON must be an object with \"coeffs\"");
  const Json& c = j.at("coeffs");
  if (!c.is_array() || c.size() != 10) throw ValidationError("\"coeffs\" must hold 10 numbers");
  std::array<double, 10> a{};
  for (size_t k = 0; k < 10; ++k) {
    if (!c[k].is_number()) throw ValidationError("\"coeffs\" entries must be numbers");
    a[k] = c[k].get<double>();
  }
  return HarmonicCubic(a);
}

HarmonicCubic cubic_from_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  return cubic_from_json(j);
}

Json normal_form_to_json(const NormalFormResult& nf) {
  Json j;
  j["type"] = std::string(to_string(nf.type));
  Json rot = Json::array();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) rot.push_back(nf.rotation.matrix()(a, b));
  j["rotation"] = rot;
  j["r"] = nf.r;
  j["s"] = nf.s;
  j["residual"] = nf.residual;
  j["dist_s_minus_r"] = nf.dist_s_minus_r ? Json(*nf.dist_s_minus_r) : Json(nullptr);
  j["dist_s_minus_r_sqrt2"] = nf.dist_s_minus_r_sqrt2 ? Json(*nf.dist_s_minus_r_sqrt2) : Json(nullptr);
  return j;
}

std::vector<std::string> point_report_columns() {
  std::vector<std::string> c{"u1", "u2", "u3"};
  for (int k = 1; k <= 6; ++k) c.push_back("x" + std::to_string(k));
  c.insert(c.end(), {"lag_res", "im_res", "trace_res"});
  for (int k = 1; k <= 10; ++k) c.push_back("c" + std::to_string(k));
  c.insert(c.end(), {"type", "r", "s", "error"});
  return c;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        out.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.emplace_back();
    } else if (ch != '\r') {
      out.back() += ch;
    }
  }
  if (quoted) throw ValidationError("unterminated quote in CSV line");
  return out;
}

std::string point_reports_csv(const std::vector<PointReport>& rows) {
  std::string out = point_report_csv_header();
  for (const auto& r : rows) out += point_report_csv_row(r);
  return out;
}

std::string point_report_csv_header() {
  std::string out;
  for (const auto& c : point_report_columns()) out += (out.empty() ? "" : ",") + c;
  return out + "\n";
}

std::string point_report_csv_row(const PointReport& r) {
  std::vector<std::string> f;
  for (int a = 0; a < 3; ++a) f.push_back(fmt(r.u(a)));
  const Vec6 x = to_real(r.position);
  for (int k = 0; k < 6; ++k) f.push_back(fmt(x(k)));
  f.insert(f.end(), {fmt(r.lag_res), fmt(r.im_res), fmt(r.trace_res)});
  for (double c : r.cubic.coeffs()) f.push_back(fmt(c));
  if (r.error) {
    f.insert(f.end(), {"", "", "", csv_escape(*r.error)});
  } else {
    f.insert(f.end(), {std::string(to_string(r.nf.type)), fmt(r.nf.r), fmt(r.nf.s), ""});
  }
  std::string out;
  for (size_t k = 0; k < f.size(); ++k) out += (k ? "," : "") + f[k];
  return out + "\n";
}

namespace {

double number(const std::string& s, const std::string& col) {
  if (s.empty()) return std::nan("");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw ValidationError("bad number in column " + col + ": " + s);
  return v;
}

}  // namespace

std::vector<PointReport> parse_point_reports_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty CSV");
  const auto header = split_csv_line(line);
  std::map<std::string, size_t> col;
  for (size_t k = 0; k < header.size(); ++k) col[header[k]] = k;
  for (const auto& c : point_report_columns())
    if (!col.count(c)) throw ValidationError("CSV lacks column " + c);
  std::vector<PointReport> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size()) throw ValidationError("CSV row has the wrong number of fields");
    auto get = [&](const std::string& c) { return number(f[col.at(c)], c); };
    PointReport r;
    r.u = Vec3(get("u1"), get("u2"), get("u3"));
    Vec6 x;
    for (int k = 0; k < 6; ++k) x(k) = get("x" + std::to_string(k + 1));
    r.position = to_complex(x);
    r.lag_res = get("lag_res");
    r.im_res = get("im_res");
    r.trace_res = get("trace_res");
    std::array<double, 10> c{};
    for (int k = 0; k < 10; ++k) c[k] = get("c" + std::to_string(k + 1));
    const std::string err = f[col.at("error")];
    if (!err.empty()) {
      r.error = err;
      bool finite = true;
      for (double v : c) finite = finite && std::isfinite(v);
      if (finite) r.cubic = HarmonicCubic(c);
    } else {
      r.cubic = HarmonicCubic(c);
      r.nf.type = stabilizer_from_string(f[col.at("type")]);
      r.nf.r = get("r");
      r.nf.s = get("s");
    }
    out.push_back(std::move(r));
  }
  return out;
}

Json point_report_to_json(const PointReport& r) {
  Json j;
  j["u"] = {r.u(0), r.u(1), r.u(2)};
  const Vec6 x = to_real(r.position);
  j["x"] = std::vector<double>(x.data(), x.data() + 6);
  j["lag_res"] = r.lag_res;
  j["im_res"] = r.im_res;
  j["trace_res"] = r.trace_res;
  j["coeffs"] = r.cubic.coeffs();
  if (r.error) {
    j["type"] = nullptr;
    j["r"] = nullptr;
    j["s"] = nullptr;
    j["error"] = *r.error;
  } else {
    j["type"] = std::string(to_string(r.nf.type));
    j["r"] = r.nf.r;
    j["s"] = r.nf.s;
    j["error"] = nullptr;
  }
  return j;
}

PointReport point_report_from_json(const Json& j) {
  try {
    PointReport r;
    const auto u = j.at("u").get<std::vector<double>>();
    const auto x = j.at("x").get<std::vector<double>>();
    if (u.size() != 3 || x.size() != 6) throw ValidationError("point report JSON: bad u or x length");
    r.u = Vec3(u[0], u[1], u[2]);
    r.position = to_complex(Vec6(Eigen::Map<const Vec6>(x.data())));
    r.lag_res = j.at("lag_res").get<double>();
    r.im_res = j.at("im_res").get<double>();
    r.trace_res = j.at("trace_res").get<double>();
    r.cubic = HarmonicCubic(j.at("coeffs").get<std::array<double, 10>>());
    if (!j.at("error").is_null()) {
      r.error = j.at("error").get<std::string>();
    } else {
      r.nf.type = stabilizer_from_string(j.at("type").get<std::string>());
      r.nf.r = j.at("r").get<double>();
      r.nf.s = j.at("s").get<double>();
    }
    return r;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("point report JSON: ") + e.what());
  }
}

std::vector<double> parse_list(const std::string& text, size_t n, const std::string& what) {
  std::vector<double> out;
  for (const auto& f : split_csv_line(text)) {
    char* end = nullptr;
    const double v = std::strtod(f.c_str(), &end);
    if (f.empty() || *end != '\0' || !std::isfinite(v)) throw ValidationError(what + ": bad number '" + f + "'");
    out.push_back(v);
  }
  if (out.size() != n) throw ValidationError(what + ": expected " + std::to_string(n) + " values");
  return out;
}

}  // namespace slag::io
