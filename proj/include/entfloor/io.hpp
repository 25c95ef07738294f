// io.hpp — JSON schemas (states, certificates, scan specs) and table output.
#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "entfloor/dual.hpp"
#include "entfloor/qstate.hpp"

namespace entfloor {

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// CSV with a header row; numbers carry 12 significant digits.
std::string table_to_csv(const Table& t);

nlohmann::json table_to_json(const Table& t);  // array of objects keyed by column

// Matrices serialize as row-major lists of [re, im] pairs.
nlohmann::json matrix_to_json(const CMat& m);
CMat matrix_from_json(const nlohmann::json& j, int dim);

// { "dim": d, "matrix": [[re,im], ...] }
nlohmann::json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const nlohmann::json& j);
DensityMatrix state_from_file(const std::string& path);

// { "dim": int, "two_copy": bool, "M": [[re,im],...],
//   "observables": [word or {"label","matrix"}], "nus": [real] }
nlohmann::json certificate_to_json(const DualCertificate& c);
DualCertificate certificate_from_json(const nlohmann::json& j);
DualCertificate certificate_from_file(const std::string& path);

nlohmann::json load_json_file(const std::string& path);

}  // namespace entfloor
