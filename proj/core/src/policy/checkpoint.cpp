#include "ril/policy/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "ril/common/error.hpp"

namespace ril {
namespace {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

constexpr char kMagic[8] = {'R', 'I', 'L', 'N', 'E', 'T', '1', '\0'};
constexpr std::uint32_t kMaxDim = 1u << 20;

void put_u32(std::ostream& out, std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), sizeof v); }
void put_f64(std::ostream& out, double v) { out.write(reinterpret_cast<const char*>(&v), sizeof v); }

std::uint32_t get_u32(std::istream& in) {
  std::uint32_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw ParseError("checkpoint truncated");
  return v;
}

double get_f64(std::istream& in) {
  double v = 0.0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw ParseError("checkpoint truncated");
  return v;
}

}  // namespace

void write_checkpoint(std::ostream& out, const GaussianPolicy& policy) {
  const auto& layers = policy.network().layers();
  out.write(kMagic, sizeof kMagic);
  put_u32(out, static_cast<std::uint32_t>(layers.size()));
  for (const auto& layer : layers) {
    put_u32(out, static_cast<std::uint32_t>(layer.weight.rows()));
    put_u32(out, static_cast<std::uint32_t>(layer.weight.cols()));
  }
  for (const auto& layer : layers) {
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) put_f64(out, layer.weight(r, c));
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) put_f64(out, layer.bias[r]);
  }
  put_f64(out, policy.log_std()[0]);
  put_f64(out, policy.log_std()[1]);
}

void save_checkpoint(const GaussianPolicy& policy, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write checkpoint '" + path.string() + "'");
  write_checkpoint(out, policy);
  if (!out) throw IoError("failed writing checkpoint '" + path.string() + "'");
}

GaussianPolicy read_checkpoint(std::istream& in, const CommandLimits& limits, std::optional<PolicyShape> expected) {
  char magic[8] = {};
  if (!in.read(magic, sizeof magic)) throw ParseError("checkpoint truncated");
  if (std::memcmp(magic, kMagic, sizeof magic) != 0) {
    if (std::memcmp(magic, kMagic, 6) == 0) {
      throw ParseError("unsupported checkpoint version '" + std::string(magic, strnlen(magic, 8)) + "'");
    }
    throw ParseError("bad magic");
  }

  const std::uint32_t layer_count = get_u32(in);
  if (layer_count != 3) {
    throw ParseError("dimension mismatch: expected 3 layers, checkpoint has " + std::to_string(layer_count));
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> dims(layer_count);
  for (auto& [rows, cols] : dims) {
    rows = get_u32(in);
    cols = get_u32(in);
    if (rows == 0 || cols == 0 || rows > kMaxDim || cols > kMaxDim) throw ParseError("dimension mismatch: bad layer size");
  }
  if (dims[0].second != static_cast<std::uint32_t>(kObservationSize) || dims[2].first != 2) {
    throw ParseError("dimension mismatch: network must map " + std::to_string(kObservationSize) + " inputs to 2 outputs");
  }
  for (std::size_t l = 1; l < dims.size(); ++l) {
    if (dims[l].second != dims[l - 1].first) {
      throw ParseError("dimension mismatch: layer " + std::to_string(l + 1) + " expects " +
                       std::to_string(dims[l].second) + " inputs, previous layer has " +
                       std::to_string(dims[l - 1].first) + " outputs");
    }
  }
  const PolicyShape shape{static_cast<int>(dims[0].first), static_cast<int>(dims[1].first)};
  if (expected && !(*expected == shape)) {
    throw ParseError("dimension mismatch: checkpoint hidden sizes " + std::to_string(shape.hidden1) + "x" +
                     std::to_string(shape.hidden2) + ", expected " + std::to_string(expected->hidden1) + "x" +
                     std::to_string(expected->hidden2));
  }

  GaussianPolicy policy(shape, limits);
  for (auto& layer : policy.network().layers()) {
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) layer.weight(r, c) = get_f64(in);
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias[r] = get_f64(in);
  }
  const double ls0 = get_f64(in);
  const double ls1 = get_f64(in);
  policy.set_log_std({ls0, ls1});
  if (!policy.flat_params().allFinite()) throw ParseError("checkpoint contains non-finite parameters");
  if (in.peek() != std::char_traits<char>::eof()) throw ParseError("checkpoint has trailing bytes");
  return policy;
}

GaussianPolicy load_checkpoint(const std::filesystem::path& path, const CommandLimits& limits,
                               std::optional<PolicyShape> expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint '" + path.string() + "'");
  try {
    return read_checkpoint(in, limits, expected);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace ril
