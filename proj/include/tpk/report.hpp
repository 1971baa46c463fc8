#pragma once

#include <complex>
#include <string>
#include <vector>

#include "tpk/config.hpp"
#include "tpk/matrix.hpp"

namespace tpk {

// Shortest representation that round-trips a double exactly.
std::string formatDouble(double x);

// CSV with header "index,re,im", one row per eigenvalue.
std::string eigenvaluesCsv(const std::vector<std::complex<double>>& values);

// CSV with header "row,col,value" in row-major order.
std::string matrixCsv(const Matrix<double>& m);
std::string matrixCsv(const Matrix<Rat>& m);

Json complexToJson(const std::complex<double>& z);
Json complexListToJson(const std::vector<std::complex<double>>& zs);

// Creates the directory (and parents) if needed.
void ensureDirectory(const std::string& path);

// Writes the full content, throwing ResourceError on any failure.
void writeTextFile(const std::string& path, const std::string& content);

}  // namespace tpk
