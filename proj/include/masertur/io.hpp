// io.hpp - CSV and JSON serialization with reproducible metadata headers

#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "masertur/sweep.hpp"

namespace masertur::io {

using json = nlohmann::json;

// 17 significant digits, '.' decimal separator: doubles round-trip exactly.
std::string format_double(double v);

// "# key: value" lines followed by a blank-free separator line. The timestamp
// honors SOURCE_DATE_EPOCH so identical (command, seed, version) runs emit
// byte-identical files.
std::string metadata_block(const std::vector<std::pair<std::string, std::string>>& kv);
std::string timestamp();
std::string version();

std::string csv_header_tur();
std::string csv_row(const TurReport& r);
json to_json(const TurReport& r);

// complex matrices serialize row-major as [re, im] pairs
json to_json(const TiltedLiouvillian& L);
json to_json(const DensityVector& v);

std::string csv(const Histogram& h);
json to_json(const Histogram& h);

std::string csv(const Curve& c);
json to_json(const Curve& c);

void write_file(const std::string& path, const std::string& contents);

} // namespace masertur::io
