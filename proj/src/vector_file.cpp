#include "sjlt/vector_file.hpp"

#include <bit>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "sjlt/error.hpp"

namespace sjlt {
namespace {

constexpr char kMagic[5] = {'S', 'J', 'L', 'T', '1'};

static_assert(std::endian::native == std::endian::little, "binary vector files assume a little-endian host");

std::uint64_t read_u64(std::istream& in) {
  std::uint64_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw std::runtime_error("vector file: truncated header");
  return v;
}

void write_u64(std::ostream& out, std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), sizeof v); }

std::vector<RealVector> read_csv(std::istream& in, const std::string& path) {
  std::vector<RealVector> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    RealVector v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      // strtod rather than stod: subnormals set ERANGE but are valid values.
      char* end = nullptr;
      errno = 0;
      const double x = std::strtod(cell.c_str(), &end);
      const bool overflow = errno == ERANGE && std::isinf(x);
      if (end == cell.c_str() || overflow || cell.find_first_not_of(" \t\r", end - cell.c_str()) != std::string::npos) {
        throw InvalidArgument(path + ":" + std::to_string(lineno) + ": not a number: '" + cell + "'");
      }
      v.push_back(x);
    }
    if (!out.empty() && v.size() != out.front().size()) {
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": ragged row");
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

VectorFormat format_for_path(const std::string& path) {
  auto ends_with = [&](const char* s) {
    const std::size_t len = std::strlen(s);
    return path.size() >= len && path.compare(path.size() - len, len, s) == 0;
  };
  return ends_with(".csv") || ends_with(".txt") ? VectorFormat::csv : VectorFormat::binary;
}

std::vector<RealVector> read_vectors(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  char head[sizeof kMagic] = {};
  in.read(head, sizeof head);
  if (in.gcount() == sizeof head && std::memcmp(head, kMagic, sizeof kMagic) == 0) {
    const std::uint64_t count = read_u64(in);
    const std::uint64_t dim = read_u64(in);
    // Check the payload size before allocating anything.
    const auto here = in.tellg();
    in.seekg(0, std::ios::end);
    const auto payload = static_cast<std::uint64_t>(in.tellg() - here);
    in.seekg(here);
    if (dim != 0 && (count > payload / sizeof(double) / dim || count * dim * sizeof(double) != payload)) {
      throw InvalidArgument("'" + path + "': payload does not hold count*dim doubles");
    }
    std::vector<RealVector> out(count, RealVector(dim));
    for (auto& v : out) {
      if (!in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(dim * sizeof(double)))) {
        throw InvalidArgument("'" + path + "': truncated payload");
      }
    }
    return out;
  }
  in.clear();
  in.seekg(0);
  return read_csv(in, path);
}

void write_vectors(const std::string& path, const std::vector<RealVector>& vs, VectorFormat fmt) {
  const std::uint64_t dim = vs.empty() ? 0 : vs.front().size();
  for (const auto& v : vs) detail::require(v.size() == dim, "write_vectors: vectors differ in length");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  if (fmt == VectorFormat::binary) {
    out.write(kMagic, sizeof kMagic);
    write_u64(out, vs.size());
    write_u64(out, dim);
    for (const auto& v : vs) out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(dim * sizeof(double)));
  } else {
    out << std::setprecision(17);
    for (const auto& v : vs) {
      for (std::size_t j = 0; j < v.size(); ++j) out << (j ? "," : "") << v[j];
      out << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace sjlt
