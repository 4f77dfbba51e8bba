#include "weil/io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace weil::io {

namespace {

using nlohmann::json;

json load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

void store(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

Complex parse_complex(const json& v) {
  if (v.is_number()) return Complex(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return Complex(v[0].get<double>(), v[1].get<double>());
  throw std::runtime_error("expected a number or an [re, im] pair");
}

json dump_complex(const Complex& z) { return json::array({z.real(), z.imag()}); }

Vec parse_vector(const json& arr) {
  if (!arr.is_array()) throw std::runtime_error("expected an array of complex values");
  Vec out(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) out[static_cast<Eigen::Index>(i)] = parse_complex(arr[i]);
  return out;
}

json dump_vector(const Vec& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(dump_complex(v[i]));
  return arr;
}

}  // namespace

std::string eigenvalue_label(const Complex& mu) {
  if (mu == Complex(1, 0)) return "+1";
  if (mu == Complex(-1, 0)) return "-1";
  if (mu == Complex(0, 1)) return "+i";
  if (mu == Complex(0, -1)) return "-i";
  throw std::invalid_argument("eigenvalue is not an exact fourth root of unity");
}

SignalFile read_signal(const std::filesystem::path& path) {
  const json j = load(path);
  if (!j.contains("p") || !j.contains("values"))
    throw std::runtime_error(path.string() + ": signal file needs fields 'p' and 'values'");
  SignalFile sig;
  sig.p = j.at("p").get<std::int64_t>();
  sig.values = parse_vector(j.at("values"));
  if (sig.values.size() != sig.p)
    throw std::runtime_error(path.string() + ": signal length does not equal p");
  if (!sig.values.allFinite()) throw std::runtime_error(path.string() + ": non-finite entries");
  return sig;
}

void write_signal(const std::filesystem::path& path, const SignalFile& signal) {
  store(path, json{{"p", signal.p}, {"values", dump_vector(signal.values)}});
}

BasisFile to_basis_file(const EigenBasis& basis) {
  BasisFile file;
  file.p = basis.torus.ctx->p();
  file.torus_kind = basis.torus.kind == TorusKind::split ? "split" : "nonsplit";
  for (const BasisVector& bv : basis.vectors) {
    if (!bv.dft_eigenvalue)
      throw std::invalid_argument("to_basis_file: basis lacks DFT eigenvalue labels");
    file.records.push_back(BasisRecord{bv.character, eigenvalue_label(*bv.dft_eigenvalue), bv.vector});
  }
  return file;
}

void write_basis(const std::filesystem::path& path, const BasisFile& basis,
                 const std::string& format) {
  if (format == "json") {
    json records = json::array();
    for (const BasisRecord& r : basis.records) {
      records.push_back(
          json{{"character", r.character}, {"eigenvalue", r.eigenvalue}, {"vector", dump_vector(r.vector)}});
    }
    store(path, json{{"p", basis.p}, {"torus", basis.torus_kind}, {"records", records}});
    return;
  }
  if (format == "csv") {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "character,eigenvalue,coordinate,re,im\n";
    out.precision(17);
    for (const BasisRecord& r : basis.records)
      for (Eigen::Index x = 0; x < r.vector.size(); ++x)
        out << r.character << ',' << r.eigenvalue << ',' << x << ',' << r.vector[x].real() << ','
            << r.vector[x].imag() << '\n';
    return;
  }
  throw std::invalid_argument("unknown basis format: " + format);
}

BasisFile read_basis_json(const std::filesystem::path& path) {
  const json j = load(path);
  BasisFile file;
  file.p = j.at("p").get<std::int64_t>();
  file.torus_kind = j.at("torus").get<std::string>();
  for (const json& r : j.at("records")) {
    file.records.push_back(BasisRecord{r.at("character").get<std::int64_t>(),
                                       r.at("eigenvalue").get<std::string>(),
                                       parse_vector(r.at("vector"))});
  }
  return file;
}

void write_coefficients(const std::filesystem::path& path, const DotCoefficients& coeffs,
                        const std::string& torus_tag) {
  json values = json::object();
  for (const auto& [k, v] : coeffs.values) values[std::to_string(k)] = dump_complex(v);
  store(path, json{{"p", coeffs.p},
                   {"torus", torus_tag},
                   {"torus_kind", coeffs.kind == TorusKind::split ? "split" : "nonsplit"},
                   {"torus_order", coeffs.torus_order},
                   {"testvector",
                    coeffs.testvector == TestVector::canonical ? "canonical" : "rho-s-delta1"},
                   {"coefficients", values}});
}

std::pair<DotCoefficients, std::string> read_coefficients(const std::filesystem::path& path) {
  const json j = load(path);
  DotCoefficients coeffs;
  coeffs.p = j.at("p").get<std::int64_t>();
  coeffs.kind = j.at("torus_kind").get<std::string>() == "split" ? TorusKind::split : TorusKind::nonsplit;
  coeffs.torus_order = j.at("torus_order").get<std::int64_t>();
  const std::string tv = j.at("testvector").get<std::string>();
  if (tv != "canonical" && tv != "rho-s-delta1")
    throw std::runtime_error(path.string() + ": unknown testvector '" + tv + "'");
  coeffs.testvector = tv == "canonical" ? TestVector::canonical : TestVector::rho_s_delta1;
  for (const auto& [key, value] : j.at("coefficients").items())
    coeffs.values.emplace(std::stoll(key), parse_complex(value));
  return {coeffs, j.at("torus").get<std::string>()};
}

}  // namespace weil::io
