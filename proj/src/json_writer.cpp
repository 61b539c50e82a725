#include "hadlab/json_writer.hpp"

#include <cmath>
#include <cstdio>

namespace hadlab {

Json to_json(const RealMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  Json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["data"] = std::move(data);
  return out;
}

Json to_json(const SignMatrix& s) {
  Json rows = Json::array();
  const std::string text = serialize_sign_matrix(s);
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    rows.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return rows;
}

Json to_json_indices(const IndexList& idx) {
  Json out = Json::array();
  for (int i : idx) out.push_back(i + 1);
  return out;
}

namespace {

void write(const Json& j, std::string& out, int indent, int depth, int precision) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent < 0 ? ":" : ": ";
        write(value, out, indent, depth + 1, precision);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool scalar = true;
      for (const auto& v : j) scalar = scalar && !v.is_structured();
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += scalar ? ", " : ",";
        if (indent < 0 && !first && scalar) out.pop_back();
        first = false;
        if (!scalar) newline(depth + 1);
        write(v, out, indent, depth + 1, precision);
      }
      if (!scalar) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.*g", precision, v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent, int precision) {
  std::string out;
  write(j, out, indent, 0, precision);
  return out;
}

}  // namespace hadlab
