#include "hexsum/spectral_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hexsum {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw SpectralFormatError(where + ": unknown field \"" + key + "\"");
  }
}

int as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw SpectralFormatError(where + ": expected an integer");
  return v.get<int>();
}

double as_double(const json& v, const std::string& where) {
  if (!v.is_number()) throw SpectralFormatError(where + ": expected a number");
  return v.get<double>();
}

}  // namespace

SpectralFunction parse_spectral_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpectralFormatError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SpectralFormatError("top level must be an object");
  reject_unknown_keys(doc, {"max_degree", "entries"}, "spectral function");
  if (!doc.contains("max_degree") || !doc.contains("entries")) {
    throw SpectralFormatError("spectral function: \"max_degree\" and \"entries\" are required");
  }
  const int max_degree = as_int(doc["max_degree"], "max_degree");
  if (max_degree < 0) throw SpectralFormatError("max_degree must be nonnegative");
  const json& entries = doc["entries"];
  if (!entries.is_array()) throw SpectralFormatError("entries must be an array");

  SpectralFunction f(max_degree);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const json& e = entries[i];
    const std::string where = "entries[" + std::to_string(i) + "]";
    if (!e.is_object()) throw SpectralFormatError(where + ": expected an object");
    reject_unknown_keys(e, {"k", "re", "im"}, where);
    if (!e.contains("k") || !e.contains("re") || !e.contains("im")) {
      throw SpectralFormatError(where + ": \"k\", \"re\" and \"im\" are required");
    }
    const json& k = e["k"];
    if (!k.is_array() || k.size() != 3) throw SpectralFormatError(where + ": k must be an array of three integers");
    const int k1 = as_int(k[0], where + ".k[0]");
    const int k2 = as_int(k[1], where + ".k[1]");
    const int k3 = as_int(k[2], where + ".k[2]");
    const std::string label =
        "(" + std::to_string(k1) + "," + std::to_string(k2) + "," + std::to_string(k3) + ")";
    if (static_cast<long long>(k1) + k2 + k3 != 0) {
      throw SpectralFormatError(where + ": index " + label + " has k1+k2+k3 != 0");
    }
    const HexIndex idx(k1, k2, k3);
    if (idx.degree() > max_degree) {
      throw SpectralFormatError(where + ": index " + label + " has degree " + std::to_string(idx.degree()) +
                                " above max_degree " + std::to_string(max_degree));
    }
    f.add(idx, cplx{as_double(e["re"], where + ".re"), as_double(e["im"], where + ".im")});
  }
  return f;
}

std::string to_spectral_json(const SpectralFunction& f) {
  json entries = json::array();
  for (const auto& [k, c] : f.entries()) {
    entries.push_back({{"k", {k.k1(), k.k2(), k.k3()}}, {"re", c.real()}, {"im", c.imag()}});
  }
  json doc = {{"max_degree", f.max_degree()}, {"entries", entries}};
  return doc.dump(2) + "\n";
}

SpectralFunction read_spectral_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spectral input " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_spectral_json(ss.str());
  } catch (const SpectralFormatError& e) {
    throw SpectralFormatError(path.string() + ": " + e.what());
  }
}

void write_spectral_file(const std::filesystem::path& path, const SpectralFunction& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write spectral output " + path.string());
  out << to_spectral_json(f);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace hexsum
