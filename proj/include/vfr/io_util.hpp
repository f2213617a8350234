// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the vfr authors
#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "vfr/types.hpp"

namespace vfr {

// Little-endian binary bundle writer. Every bundle starts with an 8-byte
// magic tag that encodes format + version.
class BinWriter {
 public:
  BinWriter(const std::string& path, const char magic[8]);
  ~BinWriter();

  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void i64(std::int64_t v);
  void f64(double v);
  void str(const std::string& s);
  void vec_i32(const std::vector<std::int32_t>& v);
  void vec_f64(const std::vector<double>& v);
  void matrix(const Matrix& m);
  void vector(const Vector& v);

 private:
  void raw(const void* p, std::size_t n);
  std::ofstream out_;
  std::string path_;
};

class BinReader {
 public:
  // Throws DataError if the file is missing or the magic does not match.
  BinReader(const std::string& path, const char magic[8]);

  std::uint32_t u32();
  std::uint64_t u64();
  std::int64_t i64();
  double f64();
  std::string str();
  std::vector<std::int32_t> vec_i32();
  std::vector<double> vec_f64();
  Matrix matrix();
  Vector vector();

 private:
  void raw(void* p, std::size_t n);
  std::ifstream in_;
  std::string path_;
};

std::string slurp_file(const std::string& path);  // throws DataError if unreadable
void write_text_file(const std::string& path, const std::string& content);

// Serial when threads <= 1; otherwise index-sharded. fn(i) must only touch
// slot i of any shared output so results are independent of scheduling.
void parallel_for(std::int64_t n, int threads, const std::function<void(std::int64_t)>& fn);

// Doubles formatted for CSV/text reports: shortest round-trip decimal.
std::string fmt_double(double v);

}  // namespace vfr
