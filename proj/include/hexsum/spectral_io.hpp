#pragma once

// JSON exchange format for spectral functions:
//   {"max_degree": D, "entries": [{"k": [k1, k2, k3], "re": r, "im": i}, ...]}
// Unknown fields are rejected. So are indices with a nonzero sum or a degree
// above max_degree.

#include <filesystem>
#include <stdexcept>
#include <string>

#include "hexsum/fourier.hpp"

namespace hexsum {

class SpectralFormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

SpectralFunction parse_spectral_json(const std::string& text);
std::string to_spectral_json(const SpectralFunction& f);

/// Throws SpectralFormatError on malformed content and std::runtime_error
/// (mentioning the path) when the file cannot be read or written.
SpectralFunction read_spectral_file(const std::filesystem::path& path);
void write_spectral_file(const std::filesystem::path& path, const SpectralFunction& f);

}  // namespace hexsum
