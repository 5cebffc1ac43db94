#include "sympos/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace sympos {

namespace {

void dump_rec(const Json& j, std::string& out, int indent, int depth) {
  const std::string pad = indent ? "\n" + std::string(indent * (depth + 1), ' ') : "";
  const std::string pad_close = indent ? "\n" + std::string(indent * depth, ' ') : "";
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += ':';
        dump_rec(it.value(), out, indent, depth + 1);
      }
      if (!first) out += pad_close;
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        out += pad;
        dump_rec(v, out, indent, depth + 1);
      }
      if (!first) out += pad_close;
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) throw InvalidInstance("canonical_dump: non-finite number");
      if (v == 0.0) v = 0.0;  // fold −0 so round-trips stay byte-identical
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

CMatrix parse_cmatrix_impl(const Json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInstance("matrix: expected non-empty array");
  const auto rows = j.size();
  const auto cols = j[0].size();
  CMatrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw InvalidInstance("matrix: ragged rows");
    for (size_t c = 0; c < cols; ++c) m(r, c) = parse_complex(j[r][c]);
  }
  return m;
}

}  // namespace

std::string canonical_dump(const Json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  if (indent) out += '\n';
  return out;
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const RVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const QuadraticWeight& w) {
  return Json{{"A", to_json(w.holomorphic_part())}, {"L", to_json(w.levi())}};
}

Json to_json(const PositivityVerdict& v) {
  auto route = [](const RouteOutput& r) {
    Json j{{"ok", r.ok}};
    if (r.ok) {
      j["status"] = to_string(r.status);
      j["min_eigenvalue"] = r.min_eigenvalue;
      j["tol"] = r.tol;
    }
    if (!r.error.empty()) j["error"] = r.error;
    return j;
  };
  return Json{{"status", to_string(v.status)},
              {"min_eigenvalue", v.min_eigenvalue},
              {"witness", to_json(v.witness)},
              {"route_agreement", v.route_agreement},
              {"inconsistent", v.inconsistent},
              {"direct", route(v.direct)},
              {"characterization", route(v.characterization)}};
}

Complex parse_complex(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidInstance("complex: expected [re, im]");
  const double re = j[0].get<double>(), im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im))
    throw InvalidInstance("complex: non-finite value");
  return {re, im};
}

CMatrix parse_cmatrix(const Json& j, int rows, int cols) {
  CMatrix m = parse_cmatrix_impl(j);
  if ((rows >= 0 && m.rows() != rows) || (cols >= 0 && m.cols() != cols))
    throw InvalidInstance("matrix: unexpected shape");
  return m;
}

QuadraticWeight parse_weight(const Json& j) {
  if (!j.is_object() || !j.contains("A") || !j.contains("L"))
    throw InvalidInstance("weight: expected {A, L}");
  const CMatrix A = parse_cmatrix(j["A"]);
  const CMatrix L = parse_cmatrix(j["L"], static_cast<int>(A.rows()),
                                  static_cast<int>(A.cols()));
  return {A, L};
}

ComplexQuadraticSymbolExponent parse_symbol(const Json& j) {
  if (!j.is_object() || !j.contains("Q1") || !j.contains("Q2") || !j.contains("Q3"))
    throw InvalidInstance("symbol exponent: expected {Q1, Q2, Q3}");
  const CMatrix Q1 = parse_cmatrix(j["Q1"]);
  const int n = static_cast<int>(Q1.rows());
  return {Q1, parse_cmatrix(j["Q2"], n, n), parse_cmatrix(j["Q3"], n, n)};
}

}  // namespace sympos
