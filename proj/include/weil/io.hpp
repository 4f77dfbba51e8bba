// File formats for the CLI: signals, eigenbases and coefficient sets as JSON
// (complex numbers as explicit [re, im] pairs), plus the CSV basis export.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "weil/oscillator.hpp"
#include "weil/spectral.hpp"

namespace weil::io {

struct SignalFile {
  std::int64_t p = 0;
  Vec values;
};

/// Reads {"p": ..., "values": [[re, im] | number, ...]}; real entries are
/// promoted to complex. Throws std::runtime_error on malformed input.
SignalFile read_signal(const std::filesystem::path& path);
void write_signal(const std::filesystem::path& path, const SignalFile& signal);

struct BasisRecord {
  std::int64_t character = 0;
  std::string eigenvalue;  // "+1", "-1", "+i", "-i"
  Vec vector;
};

struct BasisFile {
  std::int64_t p = 0;
  std::string torus_kind;  // "split" | "nonsplit"
  std::vector<BasisRecord> records;
};

BasisFile to_basis_file(const EigenBasis& basis);
void write_basis(const std::filesystem::path& path, const BasisFile& basis,
                 const std::string& format);  // "json" | "csv"
BasisFile read_basis_json(const std::filesystem::path& path);

/// Eigenvalue label for an exact fourth root of unity.
std::string eigenvalue_label(const Complex& mu);

/// Coefficients keyed by character index; torus_tag records which torus the
/// CLI used ("tw" | "diag" | "nonsplit").
void write_coefficients(const std::filesystem::path& path, const DotCoefficients& coeffs,
                        const std::string& torus_tag);
std::pair<DotCoefficients, std::string> read_coefficients(const std::filesystem::path& path);

}  // namespace weil::io
