#include "schwarz/io.hpp"

#include "schwarz/error.hpp"

#include <cmath>
#include <fstream>

namespace schwarz::io {

namespace {

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw SchwarzError(ErrorCode::InvalidParameter, std::string("missing key \"") + key + "\"");
  }
  return j.at(key);
}

std::vector<DenseMatrix> block_list(const json& j, std::size_t n, std::size_t expected,
                                    const std::string& name) {
  if (!j.is_array() || j.size() != expected) {
    throw SchwarzError(ErrorCode::DimensionMismatch,
                       name + " must list " + std::to_string(expected) + " blocks");
  }
  std::vector<DenseMatrix> blocks;
  for (std::size_t i = 0; i < j.size(); ++i) {
    blocks.push_back(block_from_json(j[i], n, name + "[" + std::to_string(i) + "]"));
  }
  return blocks;
}

json wing_to_json(const BlockTridiagonal& w) {
  json out = json::object();
  auto list = [](const std::vector<DenseMatrix>& bs) {
    json a = json::array();
    for (const auto& b : bs) a.push_back(block_to_json(b));
    return a;
  };
  out["sub"] = list(w.sub());
  out["diag"] = list(w.diag());
  out["super"] = list(w.super());
  return out;
}

BlockTridiagonal wing_from_json(const json& j, std::size_t n, std::size_t m,
                                const std::string& name) {
  return BlockTridiagonal(block_list(member(j, "sub"), n, m - 1, name + ".sub"),
                          block_list(member(j, "diag"), n, m, name + ".diag"),
                          block_list(member(j, "super"), n, m - 1, name + ".super"));
}

}  // namespace

json block_to_json(const DenseMatrix& b) { return json(std::vector<double>(b.entries().begin(), b.entries().end())); }

DenseMatrix block_from_json(const json& j, std::size_t n, const std::string& name) {
  if (!j.is_array() || j.size() != n * n) {
    throw SchwarzError(ErrorCode::DimensionMismatch,
                       name + " must be a flat array of " + std::to_string(n * n) + " numbers");
  }
  std::vector<double> entries;
  entries.reserve(n * n);
  for (const auto& v : j) {
    if (!v.is_number()) throw SchwarzError(ErrorCode::InvalidParameter, name + ": non-numeric entry");
    entries.push_back(v.get<double>());
  }
  return DenseMatrix(n, n, std::move(entries));
}

json system_to_json(const BlockArrowSystem& sys) {
  json blocks = json::object();
  blocks["top"] = wing_to_json(sys.wing_top());
  blocks["bottom"] = wing_to_json(sys.wing_bottom());
  blocks["A"] = block_to_json(sys.center());
  blocks["B"] = block_to_json(sys.coupling_b());
  blocks["C"] = block_to_json(sys.coupling_c());
  blocks["BH"] = block_to_json(sys.coupling_bh());
  blocks["Ch"] = block_to_json(sys.coupling_ch());
  return json{{"n", sys.block_dim()}, {"m", sys.wing_length()}, {"blocks", blocks}};
}

BlockArrowSystem system_from_json(const json& j) {
  const json& jn = member(j, "n");
  const json& jm = member(j, "m");
  if (!is_count(jn) || !is_count(jm)) {
    throw SchwarzError(ErrorCode::InvalidParameter, "n and m must be positive integers");
  }
  const auto n = jn.get<std::size_t>();
  const auto m = jm.get<std::size_t>();
  if (n == 0 || m == 0) throw SchwarzError(ErrorCode::InvalidParameter, "n and m must be >= 1");
  const json& blocks = member(j, "blocks");
  return BlockArrowSystem::assemble(
      n, m, wing_from_json(member(blocks, "top"), n, m, "top"),
      wing_from_json(member(blocks, "bottom"), n, m, "bottom"),
      block_from_json(member(blocks, "A"), n, "A"), block_from_json(member(blocks, "B"), n, "B"),
      block_from_json(member(blocks, "C"), n, "C"), block_from_json(member(blocks, "BH"), n, "BH"),
      block_from_json(member(blocks, "Ch"), n, "Ch"));
}

Vector vector_from_json(const json& j) {
  const json& arr = j.is_array() ? j : member(j, "b");
  if (!arr.is_array()) throw SchwarzError(ErrorCode::InvalidParameter, "\"b\" must be an array");
  Vector v;
  v.reserve(arr.size());
  for (const auto& x : arr) {
    if (!x.is_number() || !std::isfinite(x.get<double>())) {
      throw SchwarzError(ErrorCode::InvalidParameter, "right-hand side entries must be finite numbers");
    }
    v.push_back(x.get<double>());
  }
  return v;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchwarzError(ErrorCode::InvalidParameter, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchwarzError(ErrorCode::InvalidParameter, path + ": " + e.what());
  }
}

}  // namespace schwarz::io
