#include "ahcurv/tensor_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ahcurv {

std::string format_double(double v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "cannot serialize a non-finite number");
  // "-0" would be read back as the integer 0
  if (v == 0.0 && std::signbit(v)) return "-0.0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string serialize_tensor_file(const TensorFile& file) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"format\": \"" << kTensorFormat << "\",\n";
  out << "  \"n\": " << file.tensor.n() << ",\n";
  out << "  \"kind\": " << nlohmann::json(file.kind).dump() << ",\n";
  if (file.seed) out << "  \"seed\": " << *file.seed << ",\n";
  if (!file.params.empty()) out << "  \"params\": " << file.params.dump() << ",\n";
  out << "  \"components\": [";
  const auto comps = file.tensor.components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i) out << ',';
    out << format_double(comps[i]);
  }
  out << "]\n}\n";
  return out.str();
}

TensorFile parse_tensor_file(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "top level must be an object");
  const auto format = doc.find("format");
  if (format == doc.end() || !format->is_string() || format->get<std::string>() != kTensorFormat)
    throw Error(ErrorKind::ParseError, std::string("format must be \"") + kTensorFormat + "\"");
  const auto n_it = doc.find("n");
  if (n_it == doc.end() || !n_it->is_number_integer()) throw Error(ErrorKind::ParseError, "missing integer field n");
  const long long n = n_it->get<long long>();
  if (n < 1 || n > 64) throw Error(ErrorKind::ParseError, "n out of range");
  const auto comps = doc.find("components");
  if (comps == doc.end() || !comps->is_array()) throw Error(ErrorKind::ParseError, "missing components array");
  const std::size_t d = static_cast<std::size_t>(2 * n);
  if (comps->size() != d * d * d * d)
    throw Error(ErrorKind::ParseError, "components must have (2n)^4 = " + std::to_string(d * d * d * d) + " entries");

  std::vector<double> values;
  values.reserve(comps->size());
  for (const auto& v : *comps) {
    if (!v.is_number()) throw Error(ErrorKind::ParseError, "components must be numbers");
    values.push_back(v.get<double>());
  }

  TensorFile file;
  file.tensor = FourTensor(static_cast<int>(n), std::move(values));
  if (const auto kind = doc.find("kind"); kind != doc.end()) {
    if (!kind->is_string()) throw Error(ErrorKind::ParseError, "kind must be a string");
    file.kind = kind->get<std::string>();
  }
  if (const auto seed = doc.find("seed"); seed != doc.end() && !seed->is_null()) {
    if (!seed->is_number_unsigned() && !(seed->is_number_integer() && seed->get<long long>() >= 0))
      throw Error(ErrorKind::ParseError, "seed must be a non-negative integer");
    file.seed = seed->get<std::uint64_t>();
  }
  if (const auto params = doc.find("params"); params != doc.end() && params->is_object()) file.params = *params;
  return file;
}

void write_tensor_file(const std::filesystem::path& path, const TensorFile& file) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot open " + path.string() + " for writing");
  out << serialize_tensor_file(file);
  if (!out) throw Error(ErrorKind::InvalidArgument, "failed writing " + path.string());
}

TensorFile read_tensor_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tensor_file(buf.str());
}

}  // namespace ahcurv
