#include "ensemble_su2/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ensemble_su2/version.hpp"

namespace ensemble_su2 {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

json bump_to_json(const bump_params& bp) {
  return json{{"a", bp.a}, {"b", bp.b}, {"c", bp.c}, {"d", bp.d}};
}

target_profile profile_from_json_value(const json& j) {
  if (!j.is_object() || !j.contains("bump") || !j.contains("amplitude"))
    throw std::runtime_error("profile JSON needs {\"bump\": {a,b,c,d}, \"amplitude\": \"...\"}");
  const json& b = j.at("bump");
  bump_params bp{b.at("a").get<double>(), b.at("b").get<double>(), b.at("c").get<double>(),
                 b.at("d").get<double>()};
  return target_profile(bp, j.at("amplitude").get<std::string>());
}

json profile_to_json_value(const target_profile& p) {
  return json{{"bump", bump_to_json(p.bump())}, {"amplitude", p.amplitude_text()}};
}

json parse_or_rethrow(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string(what) + " parse error: " + e.what());
  }
}

}  // namespace

std::string profile_to_json(const target_profile& profile) {
  return profile_to_json_value(profile).dump(2) + "\n";
}

target_profile profile_from_json(const std::string& text) {
  return profile_from_json_value(parse_or_rethrow(text, "profile"));
}

target_profile profile_from_file(const std::string& path) {
  try {
    return profile_from_json(read_text_file(path));
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string schedule_to_json(const control_schedule& sched) {
  json segs = json::array();
  for (const control_segment& s : sched.segments) {
    json v = s.window ? json{{"kind", "ghat_window"}, {"center", s.window->center}, {"scale", s.window->scale}}
                      : json{{"kind", "zero"}};
    segs.push_back(json{{"t0", s.t0}, {"t1", s.t1}, {"u", s.square}, {"v", std::move(v)}});
  }
  json j{{"version", schedule_schema_version},
         {"eps1", sched.eps1},
         {"N", sched.n_pairs},
         {"axis", sched.axis == target_axis::y ? "y" : "x"},
         {"profile", profile_to_json_value(sched.profile)},
         {"segments", std::move(segs)}};
  return j.dump(2) + "\n";
}

control_schedule schedule_from_json(const std::string& text) {
  const json j = parse_or_rethrow(text, "schedule");
  if (!j.is_object() || !j.contains("version")) throw std::runtime_error("schedule JSON: missing version");
  if (j.at("version").get<int>() != schedule_schema_version)
    throw std::runtime_error("unsupported schedule version: " + j.at("version").dump());
  control_schedule sched;
  sched.eps1 = j.at("eps1").get<double>();
  sched.n_pairs = j.at("N").get<int>();
  const std::string axis = j.at("axis").get<std::string>();
  if (axis != "x" && axis != "y") throw std::runtime_error("schedule JSON: axis must be \"x\" or \"y\"");
  sched.axis = axis == "y" ? target_axis::y : target_axis::x;
  if (!(sched.eps1 > 0) || sched.n_pairs < 1)
    throw std::runtime_error("schedule JSON: require eps1 > 0 and N >= 1");
  sched.profile = profile_from_json_value(j.at("profile"));

  const json& segs = j.at("segments");
  if (!segs.is_array() || segs.size() != static_cast<std::size_t>(2 * sched.n_pairs + 2))
    throw std::runtime_error("schedule JSON: expected 2N+2 segments");
  const double expected_scale = 1.0 / (2.0 * sched.n_pairs * std::sqrt(2.0 * std::numbers::pi));
  for (const json& js : segs) {
    control_segment s;
    s.t0 = js.at("t0").get<double>();
    s.t1 = js.at("t1").get<double>();
    s.square = js.at("u").get<int>();
    if (s.square != 1 && s.square != -1) throw std::runtime_error("schedule JSON: u must be +-1");
    if (!(s.t0 < s.t1)) throw std::runtime_error("schedule JSON: require t0 < t1");
    const json& v = js.at("v");
    const std::string kind = v.at("kind").get<std::string>();
    if (kind == "ghat_window") {
      s.window = ghat_window{v.at("center").get<double>(), v.at("scale").get<double>()};
      if (std::fabs(s.window->scale - expected_scale) > 1e-12 * expected_scale)
        throw std::runtime_error("schedule JSON: window scale must be 1/(2 N sqrt(2 pi))");
    } else if (kind != "zero") {
      throw std::runtime_error("schedule JSON: unknown v kind '" + kind + "'");
    }
    sched.segments.push_back(s);
  }
  sched.total_duration = sched.segments.back().t1;
  const double expected_total = (4.0 * sched.n_pairs + 2.0) / sched.eps1;
  const double tol = 1e-9 * expected_total;
  if (std::fabs(sched.segments.front().t0) > tol ||
      std::fabs(sched.total_duration - expected_total) > tol)
    throw std::runtime_error("schedule JSON: segments must cover [0, (4N+2)/eps1]");
  for (std::size_t k = 1; k < sched.segments.size(); ++k)
    if (std::fabs(sched.segments[k].t0 - sched.segments[k - 1].t1) > tol)
      throw std::runtime_error("schedule JSON: segments must be contiguous");
  return sched;
}

control_schedule schedule_from_file(const std::string& path) {
  try {
    return schedule_from_json(read_text_file(path));
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string result_csv(const ensemble_result& result, const control_schedule& sched) {
  std::string out = "omega,t,re00,im00,re01,im01,re10,im10,re11,im11,P,P_ref,frob_err_to_target\n";
  for (const ensemble_entry& e : result.entries) {
    const unitary2 target = axis_target(sched.profile, e.lab.omega, sched.axis);
    for (std::size_t i = 0; i < e.lab.states.size(); ++i) {
      const unitary2& x = e.lab.states[i];
      const double err = frobenius_distance(e.framed.states[i], target);
      out += format_double(e.lab.omega);
      out += ',';
      out += format_double(e.lab.times[i]);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
          out += ',';
          out += format_double(x(r, c).real());
          out += ',';
          out += format_double(x(r, c).imag());
        }
      out += ',';
      out += format_double(e.population[i]);
      out += ',';
      out += format_double(e.population_ref[i]);
      out += ',';
      out += format_double(err);
      out += '\n';
    }
  }
  return out;
}

std::string sweep_csv(const sweep_report& report) {
  std::string out = "eps1,N,max_frob_err,max_infidelity,runtime_s\n";
  for (const sweep_row& r : report.rows) {
    out += format_double(r.eps1);
    out += ',';
    out += std::to_string(r.n_pairs);
    out += ',';
    out += format_double(r.max_frob_err);
    out += ',';
    out += format_double(r.max_infidelity);
    out += ',';
    out += format_double(r.runtime_s);
    out += '\n';
  }
  return out;
}

void write_manifest(const std::string& output_path, const std::string& command,
                    const std::map<std::string, std::string>& parameters,
                    const std::vector<std::string>& inputs, const std::vector<std::string>& outputs,
                    double wall_clock_seconds) {
  json j{{"command", command},
         {"tool_version", version_string},
         {"parameters", parameters},
         {"inputs", inputs},
         {"outputs", outputs},
         {"wall_clock_seconds", wall_clock_seconds}};
  write_text_file(output_path + ".manifest.json", j.dump(2) + "\n");
}

namespace {

std::string svg_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else out += c;
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<svg_series>& series) {
  constexpr double width = 840, height = 520;
  constexpr double ml = 80, mr = 170, mt = 50, mb = 60;  // margins; right side holds the legend
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  bool first = true;
  for (const svg_series& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (first) {
        x_min = x_max = s.x[i];
        y_min = y_max = s.y[i];
        first = false;
      }
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_min = std::min(y_min, s.y[i]);
      y_max = std::max(y_max, s.y[i]);
    }
  if (x_max == x_min) x_max = x_min + 1;
  if (y_max == y_min) y_max = y_min + 1;
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;
  auto px = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * (width - ml - mr); };
  auto py = [&](double y) { return height - mb - (y - y_min) / (y_max - y_min) * (height - mt - mb); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << " " << height
      << "\" font-family=\"monospace\" font-size=\"13\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << svg_escape(title) << "</text>\n";
  // axes box and ticks
  svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << width - ml - mr << "\" height=\""
      << height - mt - mb << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = x_min + i * (x_max - x_min) / 5;
    const double yv = y_min + i * (y_max - y_min) / 5;
    svg << "<line x1=\"" << num(px(xv)) << "\" y1=\"" << height - mb << "\" x2=\"" << num(px(xv))
        << "\" y2=\"" << height - mb + 5 << "\" stroke=\"#444\"/>\n"
        << "<text x=\"" << num(px(xv)) << "\" y=\"" << height - mb + 20
        << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n"
        << "<line x1=\"" << ml - 5 << "\" y1=\"" << num(py(yv)) << "\" x2=\"" << ml << "\" y2=\""
        << num(py(yv)) << "\" stroke=\"#444\"/>\n"
        << "<text x=\"" << ml - 9 << "\" y=\"" << num(py(yv) + 4)
        << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
  }
  svg << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 16
      << "\" text-anchor=\"middle\">" << svg_escape(x_label) << "</text>\n"
      << "<text x=\"20\" y=\"" << (mt + height - mb) / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << (mt + height - mb) / 2 << ")\">"
      << svg_escape(y_label) << "</text>\n";
  // series polylines and legend
  double legend_y = mt + 10;
  for (const svg_series& s : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\""
        << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      svg << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
    svg << "\"/>\n";
    svg << "<line x1=\"" << width - mr + 12 << "\" y1=\"" << legend_y << "\" x2=\""
        << width - mr + 40 << "\" y2=\"" << legend_y << "\" stroke=\"" << s.color
        << "\" stroke-width=\"1.5\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n"
        << "<text x=\"" << width - mr + 46 << "\" y=\"" << legend_y + 4 << "\">"
        << svg_escape(s.label) << "</text>\n";
    legend_y += 20;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ensemble_su2
