#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include "twisted/beams.hpp"

namespace twisted::cli {

class IoError : public Error {
 public:
  using Error::Error;
};

// CSV with a fixed header, '.' decimals and 17 significant digits.
class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, const std::vector<std::string>& header);
  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
};

void write_text(const std::filesystem::path& path, const std::string& text);
void ensure_directory(const std::filesystem::path& dir);

// <stem>.csv with `r_nm,re_psi,im_psi,abs2` and a <stem>.json sidecar with
// the quantum numbers and beam parameters at the state's z.
void write_wavefunction(const std::filesystem::path& dir, const std::string& stem,
                        const RadialWavefunction& psi, const BeamQuantumNumbers& qn,
                        const BeamParameters& params);

}  // namespace twisted::cli
