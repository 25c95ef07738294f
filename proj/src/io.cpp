#include "entfloor/io.hpp"

#include <fstream>

namespace entfloor {

std::string table_to_csv(const Table& t) {
    std::string out;
    for (size_t c = 0; c < t.columns.size(); ++c) {
        out += t.columns[c];
        out += c + 1 < t.columns.size() ? ',' : '\n';
    }
    for (const auto& row : t.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (std::holds_alternative<double>(row[c])) out += fmt12(std::get<double>(row[c]));
            else out += std::get<std::string>(row[c]);
            out += c + 1 < row.size() ? ',' : '\n';
        }
    }
    return out;
}

nlohmann::json table_to_json(const Table& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (size_t c = 0; c < row.size(); ++c) {
            if (std::holds_alternative<double>(row[c])) obj[t.columns[c]] = std::get<double>(row[c]);
            else obj[t.columns[c]] = std::get<std::string>(row[c]);
        }
        rows.push_back(std::move(obj));
    }
    return rows;
}

nlohmann::json matrix_to_json(const CMat& m) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            out.push_back({m(r, c).real(), m(r, c).imag()});
    return out;
}

CMat matrix_from_json(const nlohmann::json& j, int dim) {
    if (!j.is_array() || j.size() != static_cast<size_t>(dim) * dim)
        throw std::invalid_argument("matrix: expected " + std::to_string(dim * dim) +
                                    " row-major [re, im] entries");
    CMat m(dim, dim);
    size_t k = 0;
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c, ++k) {
            const auto& e = j[k];
            if (!e.is_array() || e.size() != 2)
                throw std::invalid_argument("matrix entries must be [re, im] pairs");
            m(r, c) = complexd(e[0].get<double>(), e[1].get<double>());
        }
    return m;
}

nlohmann::json state_to_json(const DensityMatrix& rho) {
    return {{"dim", rho.dim()}, {"matrix", matrix_to_json(rho.matrix())}};
}

DensityMatrix state_from_json(const nlohmann::json& j) {
    int dim = j.at("dim").get<int>();
    return DensityMatrix::from_matrix(matrix_from_json(j.at("matrix"), dim));
}

DensityMatrix state_from_file(const std::string& path) {
    return state_from_json(load_json_file(path));
}

nlohmann::json certificate_to_json(const DualCertificate& c) {
    nlohmann::json obs = nlohmann::json::array();
    for (const auto& ob : c.observables) {
        bool word = !ob.label.empty() && ob.label.size() <= 4 &&
                    ob.label.find_first_not_of("1xyzIXYZ") == std::string::npos;
        if (word) obs.push_back(ob.label);
        else obs.push_back({{"label", ob.label}, {"matrix", matrix_to_json(ob.matrix)}});
    }
    return {{"dim", static_cast<int>(c.M.rows())},
            {"two_copy", c.two_copy},
            {"M", matrix_to_json(c.M)},
            {"observables", obs},
            {"nus", c.nus}};
}

DualCertificate certificate_from_json(const nlohmann::json& j) {
    DualCertificate c;
    int dim = j.at("dim").get<int>();
    c.two_copy = j.value("two_copy", false);
    if ((c.two_copy && dim != 16) || (!c.two_copy && dim != 4))
        throw std::invalid_argument("certificate dim must be 4, or 16 with two_copy");
    c.M = matrix_from_json(j.at("M"), dim);
    if ((c.M - c.M.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument("certificate M must be Hermitian");
    for (const auto& e : j.at("observables")) {
        if (e.is_string()) {
            Observable ob = Observable::from_word(e.get<std::string>());
            if (ob.matrix.rows() != dim) throw std::invalid_argument("observable word dim mismatch");
            c.observables.push_back(std::move(ob));
        } else {
            c.observables.push_back(Observable::from_matrix(
                matrix_from_json(e.at("matrix"), dim), e.value("label", "custom")));
        }
    }
    c.nus = j.at("nus").get<std::vector<double>>();
    if (c.nus.size() != c.observables.size())
        throw std::invalid_argument("certificate: nus and observables differ in length");
    return c;
}

DualCertificate certificate_from_file(const std::string& path) {
    return certificate_from_json(load_json_file(path));
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    nlohmann::json j;
    in >> j;
    return j;
}

}  // namespace entfloor
