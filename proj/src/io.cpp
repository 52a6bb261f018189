#include "qdeph/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qdeph {

namespace {
using nlohmann::ordered_json;

ordered_json matrix_to_rows(const RealMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

RealMatrix rows_to_matrix(const ordered_json& rows, int n,
                          const char* field) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw std::invalid_argument(std::string(field) + " must have n rows");
  RealMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw std::invalid_argument(std::string(field) + " rows must have n entries");
    for (int j = 0; j < n; ++j) m(i, j) = row[j].get<double>();
  }
  return m;
}
}  // namespace

std::string model_to_json(const DephasingModel& m) {
  ordered_json doc;
  doc["n"] = m.n;
  doc["c_re"] = matrix_to_rows(m.C.real());
  doc["c_im"] = matrix_to_rows(m.C.imag());
  doc["h"] = matrix_to_rows(m.h);
  return doc.dump(2) + "\n";
}

DephasingModel model_from_json(const std::string& text) {
  ordered_json doc = ordered_json::parse(text);
  if (!doc.contains("n")) throw std::invalid_argument("missing field: n");
  int n = doc["n"].get<int>();
  if (n < 1) throw std::invalid_argument("n must be positive");
  RealMatrix c_re = rows_to_matrix(doc.at("c_re"), n, "c_re");
  RealMatrix c_im = rows_to_matrix(doc.at("c_im"), n, "c_im");
  RealMatrix h = rows_to_matrix(doc.at("h"), n, "h");
  ComplexMatrix C = c_re.cast<Complex>() + Complex(0, 1) * c_im.cast<Complex>();
  return make_model(n, C, h);
}

DephasingModel read_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

void write_model(const DephasingModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out << model_to_json(m);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace qdeph
