/**
 * @file field_io.hpp
 * @brief CSV and JSON serialization of FieldSample.
 *
 * Every real number is written with 17 significant digits ("%.17g"), which
 * round-trips IEEE doubles exactly, so a written file re-reads to the same
 * bits. Files are written to a temporary sibling and renamed into place.
 */
#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "heisenberg/grid.hpp"

namespace heisenberg {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string format_real(double v) {
  if (!std::isfinite(v)) throw std::domain_error("format_real: non-finite value");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Header row: axis names in declared order, then re, im.
inline std::string to_csv(const FieldSample& f) {
  std::string out;
  for (const auto& a : f.grid.axes) out += a.name + ",";
  out += "re,im\n";
  for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
    const auto idx = f.grid.unravel(flat);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      out += format_real(f.grid.axes[k].node(idx[k]));
      out += ',';
    }
    out += format_real(f.values[flat].real());
    out += ',';
    out += format_real(f.values[flat].imag());
    out += '\n';
  }
  return out;
}

inline std::string to_json(const FieldSample& f) {
  if (f.values.size() != f.grid.size()) {
    throw std::invalid_argument("to_json: value count does not match grid");
  }
  std::string out = "{\n  \"kernel\": " + nlohmann::json(f.kernel).dump() + ",\n";
  out += "  \"params\": {\"s\": " + format_real(f.params.s) +
         ", \"tau\": " + format_real(f.params.tau) + ", \"gamma\": [" +
         format_real(f.params.gamma.real()) + ", " + format_real(f.params.gamma.imag()) +
         "], \"n\": " + std::to_string(f.params.n) + "},\n";
  out += "  \"grid\": [";
  for (std::size_t k = 0; k < f.grid.axes.size(); ++k) {
    const auto& a = f.grid.axes[k];
    out += (k ? ", " : "");
    out += "{\"name\": " + nlohmann::json(a.name).dump() + ", \"min\": " + format_real(a.min) +
           ", \"max\": " + format_real(a.max) + ", \"count\": " + std::to_string(a.count) + "}";
  }
  out += "],\n  \"values\": [";
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    out += (i ? ",\n    " : "\n    ");
    out += "[" + format_real(f.values[i].real()) + ", " + format_real(f.values[i].imag()) + "]";
  }
  out += f.values.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

inline FieldSample from_json(const std::string& text) {
  FieldSample f;
  try {
    const auto j = nlohmann::json::parse(text);
    f.kernel = j.at("kernel").get<std::string>();
    const auto& p = j.at("params");
    f.params.s = p.at("s").get<double>();
    f.params.tau = p.at("tau").get<double>();
    f.params.gamma = {p.at("gamma").at(0).get<double>(), p.at("gamma").at(1).get<double>()};
    f.params.n = p.at("n").get<int>();
    for (const auto& a : j.at("grid")) {
      f.grid.axes.push_back({a.at("name").get<std::string>(), a.at("min").get<double>(),
                             a.at("max").get<double>(), a.at("count").get<int>()});
    }
    for (const auto& v : j.at("values")) {
      f.values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("from_json: ") + e.what());
  }
  f.grid.validate();
  if (f.values.size() != f.grid.size()) {
    throw std::invalid_argument("from_json: value count does not match grid");
  }
  return f;
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Writes `content` to a temporary sibling and renames it over `path`.
inline void write_text_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into '" + path.string() + "'");
  }
}

}  // namespace heisenberg
