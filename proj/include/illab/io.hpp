#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "illab/forward_ops.hpp"
#include "illab/instability.hpp"
#include "illab/nets.hpp"
#include "illab/rates.hpp"
#include "json.hpp"

namespace illab {

using json = nlohmann::ordered_json;

json parse_json(const std::string& text, const std::string& source);
json read_json_file(const std::string& path);

// Field access with ConfigError diagnostics naming the path.
double get_number(const json& j, const std::string& key, const std::string& where);
double get_number(const json& j, const std::string& key, const std::string& where, double fallback);
int get_int(const json& j, const std::string& key, const std::string& where, int fallback);
std::string get_string(const json& j, const std::string& key, const std::string& where, const std::string& fallback);
bool get_bool(const json& j, const std::string& key, const std::string& where, bool fallback);

// {"kind": "sobolev", "s", "n", "J"} | gevrey {"sigma", "rho", "n", "J"} | unit {"J"}
// | exponential {"rate", "J"} (w_j = e^(rate j)) | custom {"w"}
WeightSequence weights_from_json(const json& j, const std::string& where, int default_J);
Rate rate_from_json(const json& j, const std::string& where);

// operator types: heat, annulus, dtn, radon, diagonal, embedding, matrix
WeightedOperator operator_from_json(const json& j);

json to_json(const WeightSequence& w);
json to_json(const Rate& r);
json to_json(const ModulusBound& m);
json to_json(const Bracket& b);
json to_json(const CarlBracket& b);
json to_json(const Fit& f);
json to_json(const SpectrumReport& s);
json to_json(const InstabilityCertificate& c);
json to_json(const Eigen::VectorXd& v);

// JSON header line, newline, then rows*cols float64 little-endian values in column-major order.
void write_matrix_binary(const std::string& path, const Eigen::MatrixXd& m, json header);
Eigen::MatrixXd read_matrix_binary(const std::string& path, json* header = nullptr);

std::string fnv1a_hex(const std::string& s);
std::string fmt_double(double x);

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

// Standalone SVG polyline plot; nonpositive values are dropped on log axes.
std::string svg_plot(const std::vector<Series>& series, const std::string& title, const std::string& xlabel,
                     const std::string& ylabel, bool logx, bool logy);

void write_text(const std::string& path, const std::string& text);

}  // namespace illab
