#pragma once

#include <string>
#include <vector>

#include "sjlt/wht.hpp"

namespace sjlt {

// Two on-disk layouts for a list of equal-length vectors:
//   binary: "SJLT1", u64 count, u64 dim, count*dim doubles, all little-endian
//   csv:    one vector per line, 17 significant digits
enum class VectorFormat { binary, csv };

// Binary when the first bytes are the magic, CSV otherwise.
std::vector<RealVector> read_vectors(const std::string& path);

void write_vectors(const std::string& path, const std::vector<RealVector>& vs, VectorFormat fmt);

// ".csv" / ".txt" means CSV; anything else binary.
VectorFormat format_for_path(const std::string& path);

}  // namespace sjlt
