#include "illab/io.hpp"

#include <algorithm>
#include <bit>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>

#include "illab/error.hpp"

namespace illab {

json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(source + ": malformed JSON: " + e.what());
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
}

namespace {

const json& field(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    if (!j.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
    return j.at(key);
}

}  // namespace

double get_number(const json& j, const std::string& key, const std::string& where) {
    const json& v = field(j, key, where);
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return v.get<double>();
}

double get_number(const json& j, const std::string& key, const std::string& where, double fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return get_number(j, key, where);
}

int get_int(const json& j, const std::string& key, const std::string& where, int fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
    return v.get<int>();
}

std::string get_string(const json& j, const std::string& key, const std::string& where, const std::string& fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
    return v.get<std::string>();
}

bool get_bool(const json& j, const std::string& key, const std::string& where, bool fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_boolean()) throw ConfigError(where + "." + key + ": expected true or false");
    return v.get<bool>();
}

WeightSequence weights_from_json(const json& j, const std::string& where, int default_J) {
    const std::string kind = get_string(j, "kind", where, "");
    const int J = get_int(j, "J", where, default_J);
    if (kind == "sobolev") return sobolev(get_number(j, "s", where), get_number(j, "n", where, 1.0), J);
    if (kind == "gevrey")
        return gevrey(get_number(j, "sigma", where), get_number(j, "rho", where), get_number(j, "n", where, 1.0), J);
    if (kind == "unit") return unit_weights(J);
    if (kind == "exponential") {
        const double r = get_number(j, "rate", where);
        std::vector<double> w(static_cast<std::size_t>(J));
        for (int i = 1; i <= J; ++i) w[std::size_t(i - 1)] = std::exp(r * i);
        return custom_weights(std::move(w));
    }
    if (kind == "custom") {
        const json& a = field(j, "w", where);
        if (!a.is_array()) throw ConfigError(where + ".w: expected an array of numbers");
        std::vector<double> w;
        for (const auto& x : a) {
            if (!x.is_number()) throw ConfigError(where + ".w: expected an array of numbers");
            w.push_back(x.get<double>());
        }
        return custom_weights(std::move(w));
    }
    throw ConfigError(where + ".kind: expected sobolev, gevrey, unit, exponential or custom");
}

Rate rate_from_json(const json& j, const std::string& where) {
    const std::string kind = get_string(j, "kind", where, "");
    const Direction d = get_string(j, "direction", where, "upper") == "lower" ? Direction::lower : Direction::upper;
    if (kind == "poly") return Rate::poly(get_number(j, "amplitude", where, 1.0), get_number(j, "exponent", where), d);
    if (kind == "stretched")
        return Rate::stretched(get_number(j, "amplitude", where, 1.0), get_number(j, "rho", where, 1.0),
                               get_number(j, "exponent", where), d);
    throw ConfigError(where + ".kind: expected poly or stretched");
}

namespace {

Coefficient coefficient_from_json(const json& j, const std::string& where) {
    const std::string t = get_string(j, "type", where, "constant");
    if (t == "constant") return constant_coefficient(get_number(j, "value", where, 1.0));
    if (t == "oscillating") return oscillating_coefficient();
    if (t == "piecewise")
        return piecewise_coefficient(get_number(j, "left", where), get_number(j, "right", where),
                                     get_number(j, "jump_at", where, 0.5));
    if (t == "tabulated") {
        const json& v = field(j, "values", where);
        std::vector<std::vector<double>> rows;
        if (!v.is_array()) throw ConfigError(where + ".values: expected an array of arrays");
        for (const auto& r : v) {
            if (!r.is_array()) throw ConfigError(where + ".values: expected an array of arrays");
            std::vector<double> row;
            for (const auto& x : r) {
                if (!x.is_number()) throw ConfigError(where + ".values: expected numbers");
                row.push_back(x.get<double>());
            }
            rows.push_back(std::move(row));
        }
        return tabulated_coefficient(std::move(rows), get_number(j, "lambda", where));
    }
    throw ConfigError(where + ".type: expected constant, oscillating, piecewise or tabulated");
}

Potential potential_from_json(const json& j, const std::string& where) {
    const std::string t = get_string(j, "type", where, "zero");
    if (t == "zero") return zero_potential();
    if (t == "radial_bump") return radial_bump(get_number(j, "amp", where, 1.0), get_number(j, "R", where, 0.5));
    if (t == "shifted_bump")
        return shifted_bump(get_number(j, "amp", where, 1.0), get_number(j, "R", where), get_number(j, "cx", where),
                            get_number(j, "cy", where));
    throw ConfigError(where + ".type: expected zero, radial_bump or shifted_bump");
}

std::vector<double> number_array(const json& j, const std::string& key, const std::string& where) {
    const json& a = field(j, key, where);
    if (!a.is_array()) throw ConfigError(where + "." + key + ": expected an array of numbers");
    std::vector<double> v;
    for (const auto& x : a) {
        if (!x.is_number()) throw ConfigError(where + "." + key + ": expected an array of numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

}  // namespace

WeightedOperator operator_from_json(const json& j) {
    const std::string where = "operator";
    const std::string type = get_string(j, "type", where, "");
    if (type == "heat") {
        HeatConfig cfg = heat_config(get_int(j, "n_x", where, 127), get_int(j, "n_t", where, 64),
                                     j.contains("coefficient") ? coefficient_from_json(j.at("coefficient"), where + ".coefficient")
                                                               : constant_coefficient(1.0));
        return heat_propagator(cfg);
    }
    if (type == "annulus") {
        const std::string norm = get_string(j, "norm", where, "l2");
        if (norm != "l2" && norm != "h_half") throw ConfigError(where + ".norm: expected l2 or h_half");
        return annulus_restriction(get_number(j, "s", where, 1.0), get_number(j, "r", where, 0.5),
                                   get_int(j, "K", where, 32), norm == "l2" ? BoundaryNorm::l2 : BoundaryNorm::h_half);
    }
    if (type == "dtn") {
        DtnConfig cfg;
        cfg.n_modes = get_int(j, "n_modes", where, cfg.n_modes);
        cfg.n_r = get_int(j, "n_r", where, cfg.n_r);
        cfg.n_theta = get_int(j, "n_theta", where, cfg.n_theta);
        cfg.force_2d = get_bool(j, "force_2d", where, false);
        cfg.solver_tol = get_number(j, "solver_tol", where, cfg.solver_tol);
        if (j.contains("potential")) cfg.q = potential_from_json(j.at("potential"), where + ".potential");
        DtnResult r = disk_dtn(cfg);
        if (r.flagged) throw NumericalError("disk_dtn: " + r.diagnostic);
        const std::string w = get_string(j, "weights", where, "l2");
        if (w == "h_half")
            attach_half_weights(r.op, cfg);
        else if (w != "l2")
            throw ConfigError(where + ".weights: expected l2 or h_half");
        return r.op;
    }
    if (type == "radon") {
        const int n_pix = get_int(j, "n_pix", where, 64), na = get_int(j, "n_angles", where, 180),
                  no = get_int(j, "n_offsets", where, 91);
        if (j.contains("limited")) {
            const json& l = j.at("limited");
            const double deg = std::numbers::pi / 180;
            return radon_matrix(radon_limited(n_pix, na, no, get_number(l, "start_deg", where + ".limited") * deg,
                                              get_number(l, "width_deg", where + ".limited") * deg));
        }
        return radon_matrix(radon_full(n_pix, na, no));
    }
    if (type == "diagonal" || type == "embedding") {
        const int J = get_int(j, "J", where, 64);
        DiagonalOperator d;
        d.domain = j.contains("domain") ? weights_from_json(j.at("domain"), where + ".domain", J) : unit_weights(J);
        d.codomain =
            j.contains("codomain") ? weights_from_json(j.at("codomain"), where + ".codomain", J) : unit_weights(J);
        if (j.contains("scale")) d.scale = number_array(j, "scale", where);
        if (d.domain.size() != d.codomain.size())
            throw ConfigError(where + ": domain and codomain weights differ in length");
        if (!d.scale.empty() && d.scale.size() != d.domain.size())
            throw ConfigError(where + ".scale: length differs from the weights");
        const int n = int(d.domain.size());
        WeightedOperator op;
        op.matrix = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) op.matrix(i, i) = d.scale.empty() ? 1.0 : d.scale[std::size_t(i)];
        op.domain = d.domain;
        op.codomain = d.codomain;
        op.label = type;
        return op;
    }
    if (type == "matrix") {
        const json& rows = field(j, "rows", where);
        if (!rows.is_array() || rows.empty()) throw ConfigError(where + ".rows: expected a nonempty array of arrays");
        const std::size_t n = rows.size();
        std::size_t m = 0;
        std::vector<std::vector<double>> vals;
        for (const auto& r : rows) {
            if (!r.is_array()) throw ConfigError(where + ".rows: expected arrays");
            std::vector<double> row;
            for (const auto& x : r) {
                if (!x.is_number()) throw ConfigError(where + ".rows: expected numbers");
                row.push_back(x.get<double>());
            }
            if (m == 0) m = row.size();
            if (row.size() != m || m == 0) throw ConfigError(where + ".rows: ragged or empty rows");
            vals.push_back(std::move(row));
        }
        Eigen::MatrixXd M(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < m; ++b) M(Eigen::Index(a), Eigen::Index(b)) = vals[a][b];
        return make_operator(M, "matrix");
    }
    throw ConfigError(where + ".type: expected heat, annulus, dtn, radon, diagonal, embedding or matrix");
}

json to_json(const WeightSequence& w) {
    return json{{"kind", to_string(w.kind)}, {"params", w.params}, {"w", w.w}};
}

json to_json(const Rate& r) {
    json j{{"kind", r.kind == Rate::Kind::poly ? "poly" : "stretched"},
           {"amplitude", r.amplitude},
           {"exponent", r.exponent},
           {"direction", r.direction == Direction::upper ? "upper" : "lower"},
           {"up_to_constants", r.up_to_constants}};
    if (r.kind == Rate::Kind::stretched) j["rho"] = r.rho;
    j["text"] = to_string(r);
    return j;
}

json to_json(const ModulusBound& m) {
    const char* k = m.kind == ModulusBound::Kind::holder ? "holder" : m.kind == ModulusBound::Kind::log ? "log" : "logexp";
    json j{{"kind", k}, {"exponent", m.exponent}};
    if (m.kind == ModulusBound::Kind::logexp) j["c"] = m.c;
    j["text"] = to_string(m);
    return j;
}

json to_json(const Bracket& b) {
    return json{{"k", b.k}, {"lo", b.lo}, {"hi", b.hi}, {"certified", b.certified}, {"evaluations", b.evaluations}};
}

json to_json(const CarlBracket& b) { return json{{"N", b.N}, {"lo", b.lo}, {"hi", b.hi}}; }

json to_json(const Fit& f) {
    return json{{"model", f.model},       {"exponent", f.exponent}, {"coefficient", f.coefficient},
                {"amplitude", f.amplitude}, {"k0", f.k0},           {"k1", f.k1},
                {"residual", f.residual}};
}

json to_json(const SpectrumReport& s) {
    json j{{"method", s.method}, {"resolved", s.resolved}, {"count", s.sigmas.size()}};
    j["sigmas"] = s.sigmas;
    j["log_sigmas"] = s.log_sigmas;
    if (s.fit) j["fit"] = to_json(*s.fit);
    j["carl"] = json::array();
    for (const auto& c : s.carl) j["carl"].push_back(to_json(c));
    return j;
}

json to_json(const Eigen::VectorXd& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json to_json(const InstabilityCertificate& c) {
    json j{{"provenance", c.provenance}, {"eps", c.eps},     {"delta", c.delta}, {"domain_distance", c.domain_distance},
           {"image_distance", c.image_distance}, {"x1", to_json(c.x1)}, {"x2", to_json(c.x2)}};
    j["modulus_curve"] = json::array();
    for (auto [t, w] : c.modulus_curve) j["modulus_curve"].push_back({t, w});
    return j;
}

void write_matrix_binary(const std::string& path, const Eigen::MatrixXd& m, json header) {
    static_assert(std::endian::native == std::endian::little, "binary export assumes a little-endian host");
    header["rows"] = m.rows();
    header["cols"] = m.cols();
    header["dtype"] = "float64-le";
    header["order"] = "column-major";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    const std::string h = header.dump();
    out.write(h.data(), std::streamsize(h.size()));
    out.put('\n');
    out.write(reinterpret_cast<const char*>(m.data()), std::streamsize(sizeof(double) * std::size_t(m.size())));
}

Eigen::MatrixXd read_matrix_binary(const std::string& path, json* header) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::string line;
    std::getline(in, line);
    const json h = parse_json(line, path);
    const Eigen::Index r = h.at("rows").get<Eigen::Index>(), c = h.at("cols").get<Eigen::Index>();
    Eigen::MatrixXd m(r, c);
    in.read(reinterpret_cast<char*>(m.data()), std::streamsize(sizeof(double) * std::size_t(m.size())));
    if (!in) throw ConfigError(path + ": truncated matrix payload");
    if (header) *header = h;
    return m;
}

std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string svg_plot(const std::vector<Series>& series, const std::string& title, const std::string& xlabel,
                     const std::string& ylabel, bool logx, bool logy) {
    const double W = 640, H = 420, ml = 70, mr = 20, mt = 36, mb = 50;
    auto tx = [&](double x) { return logx ? std::log10(x) : x; };
    auto ty = [&](double y) { return logy ? std::log10(y) : y; };
    auto ok = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!logx || x > 0) && (!logy || y > 0);
    };
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& s : series)
        for (auto [x, y] : s.points)
            if (ok(x, y)) {
                x0 = std::min(x0, tx(x));
                x1 = std::max(x1, tx(x));
                y0 = std::min(y0, ty(y));
                y1 = std::max(y1, ty(y));
            }
    if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 - x0 < 1e-300) x0 -= 0.5, x1 += 0.5;
    if (y1 - y0 < 1e-300) y0 -= 0.5, y1 += 0.5;
    auto px = [&](double x) { return ml + (tx(x) - x0) / (x1 - x0) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (ty(y) - y0) / (y1 - y0) * (H - mt - mb); };
    std::ostringstream os;
    char buf[128];
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title << "</text>\n";
    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\"" << H - mt - mb
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    std::snprintf(buf, sizeof buf, "%s%.4g", logx ? "1e" : "", x0);
    os << "<text x=\"" << ml << "\" y=\"" << H - mb + 16 << "\">" << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, "%s%.4g", logx ? "1e" : "", x1);
    os << "<text x=\"" << W - mr << "\" y=\"" << H - mb + 16 << "\" text-anchor=\"end\">" << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, "%s%.4g", logy ? "1e" : "", y0);
    os << "<text x=\"" << ml - 4 << "\" y=\"" << H - mb << "\" text-anchor=\"end\">" << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, "%s%.4g", logy ? "1e" : "", y1);
    os << "<text x=\"" << ml - 4 << "\" y=\"" << mt + 10 << "\" text-anchor=\"end\">" << buf << "</text>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
    os << "<text x=\"16\" y=\"" << H / 2 << "\" transform=\"rotate(-90 16 " << H / 2 << ")\" text-anchor=\"middle\">"
       << ylabel << "</text>\n";
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
    for (std::size_t s = 0; s < series.size(); ++s) {
        os << "<polyline fill=\"none\" stroke=\"" << colors[s % 6] << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (auto [x, y] : series[s].points) {
            if (!ok(x, y)) continue;
            std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", first ? "" : " ", px(x), py(y));
            os << buf;
            first = false;
        }
        os << "\"/>\n";
        os << "<text x=\"" << W - mr - 4 << "\" y=\"" << mt + 16 + 14 * double(s) << "\" text-anchor=\"end\" fill=\""
           << colors[s % 6] << "\">" << series[s].name << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << text;
}

}  // namespace illab
