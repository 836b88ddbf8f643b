#pragma once

// "ahcurv/1" tensor files: a JSON object with the format tag, n, a free-form
// kind label, an optional seed and the (2n)^4 components as one flat array in
// [i][j][k][l] row-major order. Numbers are written in shortest round-trip
// form so a write/read cycle is bit-exact.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "ahcurv/structure.hpp"

namespace ahcurv {

inline constexpr const char* kTensorFormat = "ahcurv/1";

struct TensorFile {
  std::string kind;
  std::optional<std::uint64_t> seed;
  /// Optional generator parameters (a, b, lambda, ...), written as "params".
  nlohmann::json params = nlohmann::json::object();
  FourTensor tensor;
};

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

std::string serialize_tensor_file(const TensorFile& file);
TensorFile parse_tensor_file(const std::string& text);

void write_tensor_file(const std::filesystem::path& path, const TensorFile& file);
TensorFile read_tensor_file(const std::filesystem::path& path);

}  // namespace ahcurv
