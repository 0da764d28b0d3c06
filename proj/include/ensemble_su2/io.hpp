#pragma once

#include <map>
#include <string>
#include <vector>

#include "ensemble_su2/analysis.hpp"
#include "ensemble_su2/schedule.hpp"
#include "ensemble_su2/simulator.hpp"

namespace ensemble_su2 {

std::string profile_to_json(const target_profile& profile);
target_profile profile_from_json(const std::string& text);
target_profile profile_from_file(const std::string& path);

std::string schedule_to_json(const control_schedule& sched);
control_schedule schedule_from_json(const std::string& text);
control_schedule schedule_from_file(const std::string& path);

// columns: omega,t,re00,im00,re01,im01,re10,im10,re11,im11,P,P_ref,frob_err_to_target
// one row per recorded step per omega (grid order); floats at 17 significant digits
std::string result_csv(const ensemble_result& result, const control_schedule& sched);

// columns: eps1,N,max_frob_err,max_infidelity,runtime_s
std::string sweep_csv(const sweep_report& report);

std::string format_double(double v);  // %.17g

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Serialized alongside every output as <output>.manifest.json.
void write_manifest(const std::string& output_path, const std::string& command,
                    const std::map<std::string, std::string>& parameters,
                    const std::vector<std::string>& inputs, const std::vector<std::string>& outputs,
                    double wall_clock_seconds);

struct svg_series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f6fb2";
  bool dashed = false;
};

// Minimal self-contained line chart (no external renderer dependencies).
std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<svg_series>& series);

}  // namespace ensemble_su2
