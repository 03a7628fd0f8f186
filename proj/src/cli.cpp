#include "slag/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "slag/frame_integrator.hpp"
#include "slag/gallery.hpp"
#include "slag/io.hpp"
#include "slag/ruled.hpp"

namespace slag::cli {

namespace {

using io::fmt;
using io::Json;

const std::map<std::string, Command> kCommands{{"classify", Command::Classify}, {"sweep", Command::Sweep},
                                               {"verify", Command::Verify},     {"gen", Command::Gen},
                                               {"integrate", Command::Integrate}, {"ruled", Command::Ruled}};

std::string command_name(Command c) {
  for (const auto& [name, cmd] : kCommands)
    if (cmd == c) return name;
  return "?";
}

void error_line(std::ostream& err, const std::string& kind, const std::string& command, const std::string& msg) {
  Json j;
  j["level"] = "error";
  j["kind"] = kind;
  j["command"] = command;
  j["message"] = msg;
  err << j.dump() << "\n";
}

std::string join(const std::vector<std::string>& f) {
  std::string out;
  for (size_t k = 0; k < f.size(); ++k) out += (k ? "," : "") + f[k];
  return out + "\n";
}

GalleryEntry entry_for(const RunConfig& cfg) {
  if (cfg.example.empty()) throw ValidationError("--example is required for " + command_name(cfg.command));
  return gallery_entry(cfg.example, cfg.params);
}

std::array<int, 3> grid_for(const RunConfig& cfg, const std::array<int, 3>& fallback) {
  return cfg.grid ? *cfg.grid : fallback;
}

Format format_for(const RunConfig& cfg, Format fallback) { return cfg.format_given ? cfg.format : fallback; }

std::string do_classify(const RunConfig& cfg, std::istream& in) {
  if (cfg.format_given && cfg.format != Format::Json) throw ValidationError("classify writes JSON only");
  std::string text;
  if (cfg.input == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream f(cfg.input);
    if (!f) throw ValidationError("cannot read input file: " + cfg.input);
    text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  }
  const HarmonicCubic h = io::cubic_from_text(text);
  return io::normal_form_to_json(classify(h, cfg.tol)).dump(2) + "\n";
}

std::string do_sweep(const RunConfig& cfg) {
  const GalleryEntry e = entry_for(cfg);
  const auto rows = sweep(e.patch, grid_for(cfg, e.default_grid), cfg.tol);
  if (format_for(cfg, Format::Csv) == Format::Csv) return io::point_reports_csv(rows);
  Json j;
  j["example"] = e.patch.name;
  j["rows"] = Json::array();
  for (const auto& r : rows) j["rows"].push_back(io::point_report_to_json(r));
  return j.dump(2) + "\n";
}

struct VerifyOutcome {
  std::string text;
  int failures = 0;
  double jac_consistency = 0.0;
};

VerifyOutcome do_verify(const RunConfig& cfg) {
  const GalleryEntry e = entry_for(cfg);
  const auto rows = sweep(e.patch, grid_for(cfg, e.default_grid), cfg.tol);
  VerifyOutcome out;
  out.jac_consistency = jacobian_consistency(e.patch, 20, cfg.seed);
  if (out.jac_consistency > 1e-6) ++out.failures;
  std::vector<GaussCodazzi> gc;
  for (const auto& r : rows) {
    GaussCodazzi g{std::nan(""), std::nan("")};
    if (!r.error) {
      try {
        g = codazzi_gauss_residual(e.patch, r.u, 1e-3);
      } catch (const Error&) {
      }
    }
    gc.push_back(g);
    const double scale = r.error ? 0.0 : std::max(r.cubic.norm(), 1e-4);
    if (r.error || r.lag_res > 1e-6 || r.im_res > 1e-6 || r.trace_res > 1e-5 * scale) ++out.failures;
  }
  if (format_for(cfg, Format::Csv) == Format::Csv) {
    std::string header = io::point_report_csv_header();
    header.pop_back();
    out.text = header + ",codazzi,gauss\n";
    for (size_t k = 0; k < rows.size(); ++k) {
      std::string row = io::point_report_csv_row(rows[k]);
      row.pop_back();
      out.text += row + "," + fmt(gc[k].codazzi) + "," + fmt(gc[k].gauss) + "\n";
    }
  } else {
    Json j;
    j["example"] = e.patch.name;
    j["jacobian_consistency"] = out.jac_consistency;
    j["rows"] = Json::array();
    for (size_t k = 0; k < rows.size(); ++k) {
      Json r = io::point_report_to_json(rows[k]);
      r["codazzi"] = std::isnan(gc[k].codazzi) ? Json(nullptr) : Json(gc[k].codazzi);
      r["gauss"] = std::isnan(gc[k].gauss) ? Json(nullptr) : Json(gc[k].gauss);
      j["rows"].push_back(r);
    }
    out.text = j.dump(2) + "\n";
  }
  return out;
}

std::string samples(const ImmersionPatch& p, const std::array<int, 3>& grid, Format format) {
  std::vector<std::pair<Vec3, CVec3>> pts;
  for (int i = 0; i < grid[0]; ++i)
    for (int j = 0; j < grid[1]; ++j)
      for (int k = 0; k < grid[2]; ++k) {
        const Vec3 u(grid_node(p.domain[0], i, grid[0]), grid_node(p.domain[1], j, grid[1]),
                     grid_node(p.domain[2], k, grid[2]));
        pts.emplace_back(u, p.eval(u));
      }
  if (format == Format::Csv) {
    std::string out = "u1,u2,u3,x1,x2,x3,x4,x5,x6\n";
    for (const auto& [u, x] : pts) {
      const Vec6 r = to_real(x);
      out += join({fmt(u(0)), fmt(u(1)), fmt(u(2)), fmt(r(0)), fmt(r(1)), fmt(r(2)), fmt(r(3)), fmt(r(4)), fmt(r(5))});
    }
    return out;
  }
  Json j;
  j["patch"] = p.name;
  j["points"] = Json::array();
  for (const auto& [u, x] : pts) {
    const Vec6 r = to_real(x);
    j["points"].push_back({{"u", {u(0), u(1), u(2)}}, {"x", std::vector<double>(r.data(), r.data() + 6)}});
  }
  return j.dump(2) + "\n";
}

std::string do_gen(const RunConfig& cfg) {
  const GalleryEntry e = entry_for(cfg);
  return samples(e.patch, grid_for(cfg, e.default_grid), format_for(cfg, Format::Csv));
}

struct IntegrateOutcome {
  std::string report;
  std::string samples;
};

IntegrateOutcome do_integrate(const RunConfig& cfg) {
  const auto& q = cfg.init;
  const Z2Init init{q[0], q[1], q[2], q[3], q[4], q[5]};
  Z2Options opts;
  opts.census_grid = grid_for(cfg, opts.census_grid);
  const auto res = z2_integrate(init, Vec3(cfg.extent[0], cfg.extent[1], cfg.extent[2]), cfg.step, opts);
  Json j;
  j["init"] = {{"r", q[0]}, {"s", q[1]}, {"t1", q[2]}, {"t2", q[3]}, {"t3", q[4]}, {"u1", q[5]}};
  j["extent"] = cfg.extent;
  j["step"] = cfg.step;
  j["loop_residual"] = res.report.loop_residual;
  j["slag_res"] = res.report.slag_res;
  j["trace_res"] = res.report.trace_res;
  j["frame_drift"] = res.report.frame_drift;
  Json census = Json::object();
  for (const auto& [t, n] : res.report.type_census) census[std::string(to_string(t))] = n;
  j["type_census"] = census;
  if (res.field.cells[1] > 0 && res.field.cells[2] > 0) {
    const auto fc = z2_foliation_check(res.field);
    j["foliation"] = {{"plane_variation", fc.plane_variation}, {"quadric_residual", fc.quadric_residual}};
  } else {
    j["foliation"] = nullptr;
  }
  return {j.dump(2) + "\n", samples(res.patch, opts.census_grid, Format::Csv)};
}

std::string do_ruled(const RunConfig& cfg) {
  const GalleryEntry e = entry_for(cfg);
  const auto grid = grid_for(cfg, e.default_grid);
  struct Row {
    Vec3 u;
    RuledPoint rp;
    std::optional<double> straightness;
  };
  std::vector<Row> rows;
  for (int i = 0; i < grid[0]; ++i)
    for (int j = 0; j < grid[1]; ++j)
      for (int k = 0; k < grid[2]; ++k) {
        const auto& d = e.patch.domain;
        const Vec3 u(grid_node(d[0], i, grid[0]), grid_node(d[1], j, grid[1]), grid_node(d[2], k, grid[2]));
        Row r{u, is_ruled_point(e.patch, u, cfg.tol), std::nullopt};
        if (r.rp.ruled && !r.rp.planar) {
          try {
            r.straightness = extract_ruling(e.patch, u, cfg.arclen).straightness;
          } catch (const Error&) {
          }
        }
        rows.push_back(std::move(r));
      }
  if (format_for(cfg, Format::Csv) == Format::Csv) {
    std::string out = "u1,u2,u3,ruled,planar,directions,d1,d2,d3,d4,d5,d6,straightness\n";
    for (const auto& r : rows) {
      std::vector<std::string> f{fmt(r.u(0)), fmt(r.u(1)), fmt(r.u(2)), r.rp.ruled ? "1" : "0", r.rp.planar ? "1" : "0",
                                 std::to_string(r.rp.directions.size())};
      for (int k = 0; k < 6; ++k)
        f.push_back(r.rp.directions.empty() ? "" : fmt(to_real(r.rp.directions.front())(k)));
      f.push_back(r.straightness ? fmt(*r.straightness) : "");
      out += join(f);
    }
    return out;
  }
  Json j;
  j["example"] = e.patch.name;
  j["rows"] = Json::array();
  for (const auto& r : rows) {
    Json d = Json::array();
    for (const auto& v : r.rp.directions) {
      const Vec6 x = to_real(v);
      d.push_back(std::vector<double>(x.data(), x.data() + 6));
    }
    j["rows"].push_back({{"u", {r.u(0), r.u(1), r.u(2)}},
                         {"ruled", r.rp.ruled},
                         {"planar", r.rp.planar},
                         {"directions", d},
                         {"straightness", r.straightness ? Json(*r.straightness) : Json(nullptr)}});
  }
  return j.dump(2) + "\n";
}

void emit(const RunConfig& cfg, const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write output path: " + path);
  f << text;
  if (!f) throw ValidationError("write failed: " + path);
  (void)cfg;
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.grid)
    for (int n : *cfg.grid)
      if (n < 1) throw ValidationError("grid counts must be at least 1");
  if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) throw ValidationError("tol must be positive");
  if (!(cfg.step > 0.0) || !std::isfinite(cfg.step)) throw ValidationError("step must be positive");
  if (!(cfg.arclen > 0.0) || !std::isfinite(cfg.arclen)) throw ValidationError("arclen must be positive");
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err, std::istream& in) {
  const std::string name = command_name(cfg.command);
  try {
    validate(cfg);
    switch (cfg.command) {
      case Command::Classify:
        emit(cfg, cfg.out, do_classify(cfg, in), out);
        break;
      case Command::Sweep:
        emit(cfg, cfg.out, do_sweep(cfg), out);
        break;
      case Command::Verify: {
        const VerifyOutcome v = do_verify(cfg);
        emit(cfg, cfg.out, v.text, out);
        if (v.failures > 0) {
          error_line(err, "numerical", name,
                     std::to_string(v.failures) + " verification failures (jacobian_consistency " +
                         fmt(v.jac_consistency) + ")");
          return kExitNumerical;
        }
        break;
      }
      case Command::Gen:
        emit(cfg, cfg.out, do_gen(cfg), out);
        break;
      case Command::Integrate: {
        const IntegrateOutcome r = do_integrate(cfg);
        if (cfg.out.empty()) {
          emit(cfg, "", format_for(cfg, Format::Json) == Format::Json ? r.report : r.samples, out);
        } else {
          emit(cfg, cfg.out, r.report, out);
          emit(cfg, cfg.out + ".samples.csv", r.samples, out);
        }
        break;
      }
      case Command::Ruled:
        emit(cfg, cfg.out, do_ruled(cfg), out);
        break;
    }
  } catch (const ValidationError& e) {
    error_line(err, "validation", name, e.what());
    return kExitValidation;
  } catch (const NumericalError& e) {
    error_line(err, "numerical", name, e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    error_line(err, "numerical", name, e.what());
    return kExitNumerical;
  }
  return kExitOk;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                                    int& exit_code) {
  CLI::App app{"Special Lagrangian cubic classification, verification and reconstruction"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::vector<std::string> params;
  std::string grid, init, extent, format;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [cmd_name, cmd] : kCommands) {
    CLI::App* sub = app.add_subcommand(cmd_name);
    subs[cmd_name] = sub;
    if (cmd == Command::Classify) sub->add_option("input", cfg.input, "cubic JSON file, - for stdin");
    sub->add_option("--example", cfg.example, "gallery example name");
    sub->add_option("--param", params, "example parameter k=v")->take_all()->allow_extra_args(false);
    sub->add_option("--grid", grid, "grid counts n1,n2,n3");
    sub->add_option("--tol", cfg.tol, "classification tolerance");
    sub->add_option("--out", cfg.out, "output path");
    sub->add_option("--format", format, "json or csv");
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
    sub->add_option("--step", cfg.step, "integration step");
    sub->add_option("--init", init, "r,s,t1,t2,t3,u1");
    sub->add_option("--extent", extent, "a,b,c");
    sub->add_option("--arclen", cfg.arclen, "ruling trace length");
  }
  try {
    app.parse(argc, argv);
    for (const auto& [cmd_name, sub] : subs)
      if (sub->parsed()) cfg.command = kCommands.at(cmd_name);
    for (const auto& p : params) {
      const auto eq = p.find('=');
      if (eq == std::string::npos || eq == 0) throw ValidationError("--param expects k=v, got " + p);
      cfg.params[p.substr(0, eq)] = io::parse_list(p.substr(eq + 1), 1, "--param " + p.substr(0, eq))[0];
    }
    if (!grid.empty()) {
      const auto g = io::parse_list(grid, 3, "--grid");
      std::array<int, 3> gi{};
      for (int k = 0; k < 3; ++k) {
        if (g[k] != std::floor(g[k])) throw ValidationError("--grid expects integers");
        gi[k] = static_cast<int>(g[k]);
      }
      cfg.grid = gi;
    }
    if (!init.empty()) {
      const auto v = io::parse_list(init, 6, "--init");
      std::copy(v.begin(), v.end(), cfg.init.begin());
    }
    if (!extent.empty()) {
      const auto v = io::parse_list(extent, 3, "--extent");
      std::copy(v.begin(), v.end(), cfg.extent.begin());
    }
    if (!format.empty()) {
      if (format == "json") cfg.format = Format::Json;
      else if (format == "csv") cfg.format = Format::Csv;
      else throw ValidationError("--format must be json or csv");
      cfg.format_given = true;
    }
    validate(cfg);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    exit_code = kExitOk;
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    exit_code = kExitOk;
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    error_line(err, "validation", "parse", e.what());
    exit_code = kExitValidation;
    return std::nullopt;
  } catch (const ValidationError& e) {
    error_line(err, "validation", "parse", e.what());
    exit_code = kExitValidation;
    return std::nullopt;
  }
  exit_code = kExitOk;
  return cfg;
}

}  // namespace slag::cli
