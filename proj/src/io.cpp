#include "oqec/io.hpp"

#include <fstream>

#include <json.hpp>

namespace oqec {

namespace {

using nlohmann::json;

json entry_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const ComplexMatrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(entry_to_json(M(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty())
    throw FileFormatError("field '" + field + "': expected a non-empty array of rows");
  const size_t rows = j.size();
  size_t cols = 0;
  ComplexMatrix M;
  for (size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.empty())
      throw FileFormatError("field '" + field + "', row " + std::to_string(i) +
                            ": expected a non-empty array of [re, im] pairs");
    if (i == 0) {
      cols = row.size();
      M.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    } else if (row.size() != cols) {
      throw FileFormatError("field '" + field + "', row " + std::to_string(i) +
                            ": ragged row length");
    }
    for (size_t k = 0; k < cols; ++k) {
      const json& e = row[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw FileFormatError("field '" + field + "', entry (" + std::to_string(i) + "," +
                              std::to_string(k) + "): expected an [re, im] number pair");
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return M;
}

json load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileFormatError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& err) {
    throw FileFormatError("parse error in '" + path.string() + "': " + err.what());
  }
}

Eigen::Index require_count(const json& doc, const std::string& field) {
  if (!doc.contains(field) || !doc[field].is_number_integer() || doc[field].get<int64_t>() < 1)
    throw FileFormatError("field '" + field + "': expected a positive integer");
  return static_cast<Eigen::Index>(doc[field].get<int64_t>());
}

// Atomic per-file write: dump to a sibling temp file, then rename over.
void store_document(const std::filesystem::path& path, const json& doc) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw FileFormatError("cannot write '" + tmp.string() + "'");
    out << doc.dump(1) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

ChannelFileData read_channel_data(const std::filesystem::path& path) {
  json doc = load_document(path);
  ChannelFileData data;
  data.dim = require_count(doc, "dim");
  if (!doc.contains("kraus") || !doc["kraus"].is_array() || doc["kraus"].empty())
    throw FileFormatError("field 'kraus': expected a non-empty array of matrices");
  for (size_t a = 0; a < doc["kraus"].size(); ++a) {
    ComplexMatrix E = matrix_from_json(doc["kraus"][a], "kraus[" + std::to_string(a) + "]");
    if (E.rows() != data.dim || E.cols() != data.dim)
      throw FileFormatError("field 'kraus[" + std::to_string(a) + "]': expected a " +
                            std::to_string(data.dim) + " x " + std::to_string(data.dim) +
                            " matrix");
    data.kraus.push_back(std::move(E));
  }
  return data;
}

QuantumChannel read_channel(const std::filesystem::path& path, const Tolerance& tol) {
  ChannelFileData data = read_channel_data(path);
  return QuantumChannel(std::move(data.kraus), tol);
}

void write_channel(const std::filesystem::path& path, const QuantumChannel& ch) {
  json doc;
  doc["dim"] = ch.dim();
  json kraus = json::array();
  for (const auto& e : ch.kraus()) kraus.push_back(matrix_to_json(e));
  doc["kraus"] = std::move(kraus);
  store_document(path, doc);
}

SubsystemDecomposition read_decomposition(const std::filesystem::path& path,
                                          const Tolerance& tol) {
  json doc = load_document(path);
  const Eigen::Index dim = require_count(doc, "dim");
  const Eigen::Index m = require_count(doc, "m");
  const Eigen::Index n = require_count(doc, "n");
  if (!doc.contains("isometry"))
    throw FileFormatError("field 'isometry': missing");
  ComplexMatrix V = matrix_from_json(doc["isometry"], "isometry");
  if (V.rows() != dim || V.cols() != m * n)
    throw FileFormatError("field 'isometry': expected a " + std::to_string(dim) + " x " +
                          std::to_string(m * n) + " matrix");
  try {
    return SubsystemDecomposition(dim, m, n, std::move(V), tol);
  } catch (const Error& err) {
    throw FileFormatError("invalid decomposition in '" + path.string() + "': " + err.what());
  }
}

void write_decomposition(const std::filesystem::path& path, const SubsystemDecomposition& dec) {
  json doc;
  doc["dim"] = dec.dim();
  doc["m"] = dec.m();
  doc["n"] = dec.n();
  doc["convention"] = "column (k-1)*n + (l-1) carries |alpha_k> (x) |beta_l>";
  doc["isometry"] = matrix_to_json(dec.isometry());
  store_document(path, doc);
}

ComplexMatrix read_unitary(const std::filesystem::path& path, const Tolerance& tol) {
  json doc = load_document(path);
  const Eigen::Index dim = require_count(doc, "dim");
  if (!doc.contains("matrix")) throw FileFormatError("field 'matrix': missing");
  ComplexMatrix U = matrix_from_json(doc["matrix"], "matrix");
  if (U.rows() != dim || U.cols() != dim)
    throw FileFormatError("field 'matrix': expected a " + std::to_string(dim) + " x " +
                          std::to_string(dim) + " matrix");
  if (!is_unitary(U, tol))
    throw FileFormatError("field 'matrix' in '" + path.string() + "' is not unitary");
  return U;
}

void write_unitary(const std::filesystem::path& path, const ComplexMatrix& U) {
  json doc;
  doc["dim"] = U.rows();
  doc["matrix"] = matrix_to_json(U);
  store_document(path, doc);
}

}  // namespace oqec
