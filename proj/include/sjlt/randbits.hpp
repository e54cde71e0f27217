#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sjlt {

// Keyed 64-bit block permutation. For a fixed key the map counter -> block is
// a bijection on 64-bit words; BitSource runs it in counter mode.
class BlockPermutation {
 public:
  BlockPermutation(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  std::uint64_t operator()(std::uint64_t counter) const noexcept;

 private:
  std::uint64_t key0_;
  std::uint64_t key1_;
  std::uint64_t key2_;
};

// Deterministic stream of unbiased bits with exact consumption accounting.
//
// Bits are handed out most-significant-first from successive 64-bit blocks,
// and multi-bit draws are read as big-endian integers: the first bit drawn is
// the most significant bit of the result. A source is single-owner; give each
// worker its own stream via split().
class BitSource {
 public:
  BitSource(std::uint64_t seed, std::uint64_t stream_id);

  // A source that hands out exactly the given bits (each 0 or 1), then throws
  // std::out_of_range. Used to hand-trace draws and to enumerate seed spaces.
  static BitSource replay(std::vector<std::uint8_t> bits);

  // A fresh source on the same seed with a different stream id.
  BitSource split(std::uint64_t stream_id) const;

  // A child stream keyed by (stream_id(), index), e.g. one per matrix row or
  // per Monte-Carlo trial. Not available on replay sources.
  BitSource derive(std::uint64_t index) const;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  std::uint64_t bits_consumed() const noexcept { return consumed_; }

  bool next_bit() { return draw_uint(1) != 0; }

  // Next `width` bits as an unsigned integer, first bit most significant.
  // width must be in [0, 64].
  std::uint64_t draw_uint(unsigned width) {
    if (width == 0) return 0;
    if (width <= avail_) {
      const std::uint64_t r = buffer_ >> (64 - width);
      buffer_ = width == 64 ? 0 : buffer_ << width;
      avail_ -= width;
      consumed_ += width;
      return r;
    }
    return draw_slow(width);
  }

  std::vector<std::uint8_t> draw_bits(std::size_t count);

  // Uniform index in [0, n) from exactly log2(n) bits. n must be a power of 2.
  std::uint64_t draw_index_pow2(std::uint64_t n);

  // 53 bits mapped to [0, 1).
  double draw_unit_double() { return static_cast<double>(draw_uint(53)) * 0x1.0p-53; }

 private:
  BitSource() = default;

  std::uint64_t draw_slow(unsigned width);
  // Loads the next block into the buffer; returns the number of bits loaded.
  unsigned refill();

  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  BlockPermutation prp_{0, 0};
  std::uint64_t counter_ = 0;
  std::uint64_t buffer_ = 0;
  unsigned avail_ = 0;
  std::uint64_t consumed_ = 0;

  bool scripted_ = false;
  std::vector<std::uint8_t> script_;
  std::size_t script_pos_ = 0;
};

// Random bits consumed per component of an embedding.
struct BitReport {
  static constexpr const char* kSigns = "signs";
  static constexpr const char* kRows = "rows";
  static constexpr const char* kFallback = "fallback";

  std::map<std::string, std::uint64_t> per_component;

  void add(const std::string& component, std::uint64_t bits) { per_component[component] += bits; }
  std::uint64_t get(const std::string& component) const;
  std::uint64_t total() const;
};

}  // namespace sjlt
