#pragma once

#include "schwarz/block.hpp"

#include <json.hpp>

#include <string>

namespace schwarz::io {

using nlohmann::json;

// System documents look like
//
//   { "n": 2, "m": 3,
//     "blocks": { "top":    { "sub": [...], "diag": [...], "super": [...] },
//                 "bottom": { "sub": [...], "diag": [...], "super": [...] },
//                 "A": [...], "B": [...], "C": [...], "BH": [...], "Ch": [...] } }
//
// where every block is a flat row-major array of n*n numbers and each wing
// list holds m-1, m, m-1 blocks.

/// Non-negative integer, whether stored signed or unsigned.
inline bool is_count(const json& j) {
  return j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0);
}

json block_to_json(const DenseMatrix& b);
DenseMatrix block_from_json(const json& j, std::size_t n, const std::string& name);

json system_to_json(const BlockArrowSystem& sys);
/// Throws InvalidParameter on malformed documents and DimensionMismatch on
/// inconsistent block sizes.
BlockArrowSystem system_from_json(const json& j);

/// Accepts either a bare array or an object with a "b" array.
Vector vector_from_json(const json& j);

json read_json_file(const std::string& path);

}  // namespace schwarz::io
