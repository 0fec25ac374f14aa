#pragma once

#include <string>

namespace epsw {

inline constexpr const char* kToolVersion = "1.0.0";

// 12 significant digits, shortest form within that budget. All emitted
// numbers pass through here so reruns are byte-identical.
std::string fmt12(double x);

// The double nearest the 12-digit decimal form of x; idempotent.
double j12(double x);

// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

void write_file(const std::string& path, const std::string& content);

}  // namespace epsw
