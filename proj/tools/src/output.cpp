#include "output.hpp"

#include <locale>

#include "json.hpp"

namespace twisted::cli {

CsvFile::CsvFile(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), out_(path), columns_(header.size()) {
  if (!out_) throw IoError("cannot write " + path.string());
  out_.imbue(std::locale::classic());
  out_.precision(17);
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvFile::row(std::initializer_list<double> values) { row(std::vector<double>(values)); }

void CsvFile::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw IoError("column count mismatch in " + path_.string());
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << values[i];
  out_ << '\n';
  if (!out_) throw IoError("write failed for " + path_.string());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

void write_wavefunction(const std::filesystem::path& dir, const std::string& stem,
                        const RadialWavefunction& psi, const BeamQuantumNumbers& qn,
                        const BeamParameters& params) {
  CsvFile csv(dir / (stem + ".csv"), {"r_nm", "re_psi", "im_psi", "abs2"});
  for (std::size_t j = 0; j < psi.values.size(); ++j) {
    const auto v = psi.values[j];
    csv.row({psi.grid.node(j), v.real(), v.imag(), std::norm(v)});
  }
  nlohmann::json side;
  side["n"] = qn.n;
  side["ell"] = qn.ell;
  side["s_z"] = qn.s_z();
  side["z_nm"] = psi.z;
  side["w_nm"] = params.w;
  side["inv_R_per_nm"] = params.inv_R;
  side["gouy_rad"] = params.gouy;
  side["units"] = {{"r", "nm"}, {"psi", "1/nm"}, {"abs2", "1/nm^2"}};
  write_text(dir / (stem + ".json"), side.dump(2) + "\n");
}

}  // namespace twisted::cli
