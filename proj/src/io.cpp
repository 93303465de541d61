// io.cpp - output formats

#include "masertur/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>

namespace masertur::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string version() { return MASERTUR_VERSION; }

std::string timestamp() {
    std::time_t t;
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    } else {
        t = std::time(nullptr);
    }
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string metadata_block(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string out;
    for (const auto& [k, v] : kv) out += "# " + k + ": " + v + "\n";
    return out;
}

std::string csv_header_tur() {
    return "kind,gamma_h,gamma_c,lambda,n_h,n_c,p,current,variance,sigma,q,"
           "reliability,method";
}

std::string csv_row(const TurReport& r) {
    const bool nic = r.kind == ModelKind::FourLevelNIC;
    std::string row;
    row += to_string(r.kind);
    row += ',';
    row += format_double(r.params.gamma_h) + ",";
    row += format_double(r.params.gamma_c) + ",";
    row += format_double(r.params.lambda) + ",";
    row += format_double(r.params.n_h) + ",";
    row += format_double(r.params.n_c) + ",";
    row += (nic ? format_double(r.params.p) : std::string()) + ",";
    row += format_double(r.current) + ",";
    row += format_double(r.variance) + ",";
    row += format_double(r.sigma) + ",";
    row += format_double(r.q) + ",";
    row += format_double(r.reliability) + ",";
    row += to_string(r.method);
    return row;
}

json to_json(const TurReport& r) {
    json j{
        {"kind", to_string(r.kind)},
        {"gamma_h", r.params.gamma_h},
        {"gamma_c", r.params.gamma_c},
        {"lambda", r.params.lambda},
        {"n_h", r.params.n_h},
        {"n_c", r.params.n_c},
        {"current", r.current},
        {"variance", r.variance},
        {"sigma", r.sigma},
        {"q", r.q},
        {"reliability", r.reliability},
        {"method", to_string(r.method)},
    };
    if (r.kind == ModelKind::FourLevelNIC) j["p"] = r.params.p;
    if (r.power) j["power"] = *r.power;
    if (r.power_variance) j["power_variance"] = *r.power_variance;
    return j;
}

namespace {

json complex_matrix_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

json to_json(const TiltedLiouvillian& L) {
    return json{{"kind", to_string(L.kind)},
                {"chi", L.chi},
                {"dim", L.dim()},
                {"basis", L.basis},
                {"entries", complex_matrix_json(L.entries)}};
}

json to_json(const DensityVector& v) {
    json comps = json::array();
    for (Eigen::Index i = 0; i < v.components.size(); ++i)
        comps.push_back({v.components[i].real(), v.components[i].imag()});
    return json{{"kind", to_string(v.kind)},
                {"basis", v.labels},
                {"components", std::move(comps)}};
}

std::string csv(const Histogram& h) {
    std::string out = "bin_lo,bin_hi,count\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        if (h.counts[i] == 0) continue;
        const long long b = h.first_bin + static_cast<long long>(i);
        out += format_double(b * h.bin_width) + "," +
               format_double((b + 1) * h.bin_width) + "," +
               std::to_string(h.counts[i]) + "\n";
    }
    return out;
}

json to_json(const Histogram& h) {
    json bins = json::array();
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        if (h.counts[i] == 0) continue;
        const long long b = h.first_bin + static_cast<long long>(i);
        bins.push_back({{"lo", b * h.bin_width}, {"count", h.counts[i]}});
    }
    return json{{"bin_width", h.bin_width},
                {"total", h.total},
                {"excluded", h.excluded},
                {"requested", h.requested},
                {"min", h.min_value},
                {"max", h.max_value},
                {"violations", h.violations},
                {"violation_fraction", h.violation_fraction},
                {"bins", std::move(bins)}};
}

std::string csv(const Curve& c) {
    std::string out = c.abscissa + "," + csv_header_tur() + ",status\n";
    const std::string empty_cells(13, ','); // 13 report columns left blank
    for (const auto& pt : c.points) {
        out += format_double(pt.x) + ",";
        if (pt.degenerate) {
            out += empty_cells + "degenerate\n";
        } else {
            out += csv_row(pt.report) + "," + (pt.note.empty() ? "ok" : pt.note) + "\n";
        }
    }
    return out;
}

json to_json(const Curve& c) {
    json pts = json::array();
    for (const auto& pt : c.points) {
        json j{{"x", pt.x}, {"degenerate", pt.degenerate}};
        if (!pt.note.empty()) j["note"] = pt.note;
        if (!pt.degenerate) j["report"] = to_json(pt.report);
        pts.push_back(std::move(j));
    }
    return json{{"abscissa", c.abscissa}, {"points", std::move(pts)}};
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    f << contents;
    if (!f) throw Error(ErrorCode::IoError, "write failed for '" + path + "'");
}

} // namespace masertur::io
