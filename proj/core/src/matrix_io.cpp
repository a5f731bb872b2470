#include "hsvd/matrix_io.hpp"

#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <system_error>
#include <vector>

namespace hsvd {

namespace {

constexpr char kMagic[6] = {'H', 'S', 'V', 'D', '1', '\0'};
constexpr std::size_t kHeaderBytes = 22;  // magic + u64 rows + u64 cols

void put_u64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

void check_finite(const DenseMatrix& x, const std::string& path) {
  if (!all_finite(x))
    throw FormatError(path + ": matrix contains NaN or Inf");
}

DenseMatrix load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open for reading");

  std::vector<double> values;
  Index cols = -1;
  Index rows = 0;
  std::string line;
  for (Index lineno = 1; std::getline(in, line); ++lineno) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.peek() == std::ifstream::traits_type::eof()) break;

    Index row_cols = 0;
    const char* p = line.data();
    const char* end = p + line.size();
    while (true) {
      double v = 0.0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc())
        throw FormatError(path + ": line " + std::to_string(lineno) + ": cannot parse number");
      values.push_back(v);
      ++row_cols;
      if (next == end) break;
      if (*next != ',')
        throw FormatError(path + ": line " + std::to_string(lineno) + ": expected ','");
      p = next + 1;
    }

    if (cols < 0)
      cols = row_cols;
    else if (row_cols != cols)
      throw FormatError(path + ": line " + std::to_string(lineno) + ": row has " +
                        std::to_string(row_cols) + " values, expected " + std::to_string(cols));
    ++rows;
  }
  if (rows == 0 || cols <= 0) throw FormatError(path + ": no data rows");

  DenseMatrix x(rows, cols);
  std::memcpy(x.data(), values.data(), values.size() * sizeof(double));
  check_finite(x, path);
  return x;
}

void save_csv(const DenseMatrix& x, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError(path + ": cannot open for writing");
  std::string line;
  for (Index i = 0; i < x.rows(); ++i) {
    line.clear();
    for (Index j = 0; j < x.cols(); ++j) {
      if (j > 0) line.push_back(',');
      line += format_double(x(i, j));
    }
    line.push_back('\n');
    out << line;
  }
  if (!out) throw IoError(path + ": write failed");
}

DenseMatrix load_hsvd1(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open for reading");

  unsigned char header[kHeaderBytes];
  in.read(reinterpret_cast<char*>(header), kHeaderBytes);
  if (in.gcount() != static_cast<std::streamsize>(kHeaderBytes))
    throw FormatError(path + ": truncated header");
  if (std::memcmp(header, kMagic, sizeof(kMagic)) != 0)
    throw FormatError(path + ": bad magic, not an HSVD1 file");

  const std::uint64_t rows = get_u64(header + 6);
  const std::uint64_t cols = get_u64(header + 14);
  if (rows == 0 || cols == 0) throw FormatError(path + ": empty matrix");
  constexpr std::uint64_t kMaxElems = std::uint64_t(1) << 34;
  if (rows > kMaxElems || cols > kMaxElems || rows * cols > kMaxElems)
    throw FormatError(path + ": implausible dimensions");

  DenseMatrix x(static_cast<Index>(rows), static_cast<Index>(cols));
  const std::streamsize payload =
      static_cast<std::streamsize>(rows * cols * sizeof(double));
  in.read(reinterpret_cast<char*>(x.data()), payload);
  if (in.gcount() != payload) throw FormatError(path + ": truncated payload");
  check_finite(x, path);
  return x;
}

void save_hsvd1(const DenseMatrix& x, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path + ": cannot open for writing");

  std::string header(kMagic, sizeof(kMagic));
  put_u64(header, static_cast<std::uint64_t>(x.rows()));
  put_u64(header, static_cast<std::uint64_t>(x.cols()));
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(x.data()),
            static_cast<std::streamsize>(sizeof(double)) * x.size());
  if (!out) throw IoError(path + ": write failed");
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, end);
}

MatrixFormat format_from_name(const std::string& name) {
  if (name == "csv") return MatrixFormat::Csv;
  if (name == "hsvd" || name == "hsvd-binary" || name == "hsvd1") return MatrixFormat::Hsvd1;
  throw std::invalid_argument("unknown matrix format '" + name + "' (expected csv or hsvd)");
}

MatrixFormat format_for_path(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot != std::string::npos && path.substr(dot) == ".csv") return MatrixFormat::Csv;
  return MatrixFormat::Hsvd1;
}

DenseMatrix load_matrix(const std::string& path, MatrixFormat format) {
  return format == MatrixFormat::Csv ? load_csv(path) : load_hsvd1(path);
}

void save_matrix(const DenseMatrix& x, const std::string& path, MatrixFormat format) {
  if (x.rows() == 0 || x.cols() == 0)
    throw std::invalid_argument("save_matrix: matrix is empty");
  if (format == MatrixFormat::Csv)
    save_csv(x, path);
  else
    save_hsvd1(x, path);
}

}  // namespace hsvd
