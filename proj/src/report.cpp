#include "tpk/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace tpk {

std::string formatDouble(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string eigenvaluesCsv(const std::vector<std::complex<double>>& values) {
  std::string out = "index,re,im\n";
  for (size_t i = 0; i < values.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += formatDouble(values[i].real());
    out += ',';
    out += formatDouble(values[i].imag());
    out += '\n';
  }
  return out;
}

std::string matrixCsv(const Matrix<double>& m) {
  std::string out = "row,col,value\n";
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      out += std::to_string(i);
      out += ',';
      out += std::to_string(j);
      out += ',';
      out += formatDouble(m(i, j));
      out += '\n';
    }
  return out;
}

std::string matrixCsv(const Matrix<Rat>& m) {
  std::string out = "row,col,value\n";
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      out += std::to_string(i);
      out += ',';
      out += std::to_string(j);
      out += ',';
      out += ratToString(m(i, j));
      out += '\n';
    }
  return out;
}

Json complexToJson(const std::complex<double>& z) {
  Json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

Json complexListToJson(const std::vector<std::complex<double>>& zs) {
  Json arr = Json::array();
  for (const auto& z : zs) arr.push_back(complexToJson(z));
  return arr;
}

void ensureDirectory(const std::string& path) {
  if (path.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec)
    throw ResourceError("cannot create directory " + path + ": " +
                        ec.message());
}

void writeTextFile(const std::string& path, const std::string& content) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) ensureDirectory(parent.string());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ResourceError("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw ResourceError("write failure: " + path);
}

}  // namespace tpk
