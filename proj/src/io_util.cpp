// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the vfr authors
#include "vfr/io_util.hpp"

#include <charconv>
#include <cstring>
#include <sstream>
#include <thread>

namespace vfr {

BinWriter::BinWriter(const std::string& path, const char magic[8])
    : out_(path, std::ios::binary), path_(path) {
  if (!out_) throw DataError("cannot open for writing: " + path);
  raw(magic, 8);
}

BinWriter::~BinWriter() = default;

void BinWriter::raw(const void* p, std::size_t n) {
  out_.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
  if (!out_) throw DataError("write failed: " + path_);
}

void BinWriter::u32(std::uint32_t v) { raw(&v, sizeof v); }
void BinWriter::u64(std::uint64_t v) { raw(&v, sizeof v); }
void BinWriter::i64(std::int64_t v) { raw(&v, sizeof v); }
void BinWriter::f64(double v) { raw(&v, sizeof v); }

void BinWriter::str(const std::string& s) {
  u64(s.size());
  if (!s.empty()) raw(s.data(), s.size());
}

void BinWriter::vec_i32(const std::vector<std::int32_t>& v) {
  u64(v.size());
  if (!v.empty()) raw(v.data(), v.size() * sizeof(std::int32_t));
}

void BinWriter::vec_f64(const std::vector<double>& v) {
  u64(v.size());
  if (!v.empty()) raw(v.data(), v.size() * sizeof(double));
}

void BinWriter::matrix(const Matrix& m) {
  u64(static_cast<std::uint64_t>(m.rows()));
  u64(static_cast<std::uint64_t>(m.cols()));
  if (m.size() > 0) raw(m.data(), static_cast<std::size_t>(m.size()) * sizeof(double));
}

void BinWriter::vector(const Vector& v) {
  u64(static_cast<std::uint64_t>(v.size()));
  if (v.size() > 0) raw(v.data(), static_cast<std::size_t>(v.size()) * sizeof(double));
}

BinReader::BinReader(const std::string& path, const char magic[8])
    : in_(path, std::ios::binary), path_(path) {
  if (!in_) throw DataError("cannot open: " + path);
  char got[8];
  raw(got, 8);
  if (std::memcmp(got, magic, 8) != 0)
    throw DataError("bad magic header in " + path + " (wrong or outdated file format)");
}

void BinReader::raw(void* p, std::size_t n) {
  in_.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in_.gcount()) != n) throw DataError("truncated file: " + path_);
}

std::uint32_t BinReader::u32() {
  std::uint32_t v;
  raw(&v, sizeof v);
  return v;
}
std::uint64_t BinReader::u64() {
  std::uint64_t v;
  raw(&v, sizeof v);
  return v;
}
std::int64_t BinReader::i64() {
  std::int64_t v;
  raw(&v, sizeof v);
  return v;
}
double BinReader::f64() {
  double v;
  raw(&v, sizeof v);
  return v;
}

std::string BinReader::str() {
  const auto n = u64();
  std::string s(n, '\0');
  if (n) raw(s.data(), n);
  return s;
}

std::vector<std::int32_t> BinReader::vec_i32() {
  const auto n = u64();
  std::vector<std::int32_t> v(n);
  if (n) raw(v.data(), n * sizeof(std::int32_t));
  return v;
}

std::vector<double> BinReader::vec_f64() {
  const auto n = u64();
  std::vector<double> v(n);
  if (n) raw(v.data(), n * sizeof(double));
  return v;
}

Matrix BinReader::matrix() {
  const auto rows = u64();
  const auto cols = u64();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  if (m.size() > 0) raw(m.data(), static_cast<std::size_t>(m.size()) * sizeof(double));
  return m;
}

Vector BinReader::vector() {
  const auto n = u64();
  Vector v(static_cast<Eigen::Index>(n));
  if (n) raw(v.data(), n * sizeof(double));
  return v;
}

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << content;
  if (!out) throw DataError("write failed: " + path);
}

void parallel_for(std::int64_t n, int threads, const std::function<void(std::int64_t)>& fn) {
  if (threads <= 1 || n < 2) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const int t = static_cast<int>(std::min<std::int64_t>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(t));
  for (int w = 0; w < t; ++w) {
    pool.emplace_back([&, w] {
      for (std::int64_t i = w; i < n; i += t) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::string fmt_double(double v) {
  if (std::isnan(v)) return "NA";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

}  // namespace vfr
