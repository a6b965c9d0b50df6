#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

namespace puritydyn {

// Locale-independent serialization: 12 significant digits, '.' separator.
inline std::string csv_number(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  if (res.ec != std::errc()) throw std::runtime_error("csv_number: conversion failed");
  return std::string(buf, res.ptr);
}

inline std::string csv_number(int v) { return std::to_string(v); }
inline std::string csv_number(std::int64_t v) { return std::to_string(v); }

struct CsvTable {
  std::string header;                   // comma-joined column names
  std::vector<std::string> rows;        // pre-serialized comma-joined rows

  std::string to_string() const {
    std::string out = header;
    out.push_back('\n');
    for (const auto& r : rows) {
      out += r;
      out.push_back('\n');
    }
    return out;
  }
};

// Binary mode keeps line endings LF on every platform.
inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace puritydyn
