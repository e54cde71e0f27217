#include "sjlt/randbits.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

#include "sjlt/error.hpp"

namespace sjlt {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Murmur3 finalizer: invertible (xorshifts and odd multipliers).
constexpr std::uint64_t fmix64(std::uint64_t x) noexcept {
  x ^= x >> 33;
  x *= 0xFF51AFD7ED558CCDULL;
  x ^= x >> 33;
  x *= 0xC4CEB9FE1A85EC53ULL;
  x ^= x >> 33;
  return x;
}

}  // namespace

BlockPermutation::BlockPermutation(std::uint64_t seed, std::uint64_t stream_id) noexcept {
  const std::uint64_t s = splitmix64(seed);
  const std::uint64_t t = splitmix64(stream_id ^ 0x6A09E667F3BCC908ULL);
  key0_ = splitmix64(s ^ t);
  key1_ = splitmix64(key0_ + t);
  key2_ = splitmix64(key1_ ^ s);
}

std::uint64_t BlockPermutation::operator()(std::uint64_t counter) const noexcept {
  std::uint64_t x = counter ^ key0_;
  x = fmix64(x) ^ key1_;
  x = fmix64(x) ^ key2_;
  return fmix64(x);
}

BitSource::BitSource(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), prp_(seed, stream_id) {}

BitSource BitSource::replay(std::vector<std::uint8_t> bits) {
  for (auto b : bits) detail::require(b <= 1, "replay bits must be 0 or 1");
  BitSource src;
  src.scripted_ = true;
  src.script_ = std::move(bits);
  return src;
}

BitSource BitSource::split(std::uint64_t stream_id) const { return BitSource(seed_, stream_id); }

BitSource BitSource::derive(std::uint64_t index) const {
  if (scripted_) detail::fail_invalid("derive: replay sources have no child streams");
  return BitSource(seed_, splitmix64(stream_id_ ^ 0xA54FF53A5F1D36F1ULL) ^ splitmix64(index));
}

unsigned BitSource::refill() {
  if (!scripted_) {
    buffer_ = prp_(counter_++);
    avail_ = 64;
    return 64;
  }
  std::uint64_t word = 0;
  unsigned loaded = 0;
  while (loaded < 64 && script_pos_ < script_.size()) {
    word |= static_cast<std::uint64_t>(script_[script_pos_++]) << (63 - loaded);
    ++loaded;
  }
  buffer_ = word;
  avail_ = loaded;
  return loaded;
}

std::uint64_t BitSource::draw_slow(unsigned width) {
  if (width > 64) detail::fail_invalid("draw_uint width must be at most 64");
  // Drain what is left, then top up from a fresh block.
  const unsigned head = avail_;
  std::uint64_t r = head == 0 ? 0 : buffer_ >> (64 - head);
  const unsigned need = width - head;
  if (refill() < need) throw std::out_of_range("replayed bit script exhausted");
  r = need == 64 ? buffer_ : (r << need) | (buffer_ >> (64 - need));
  buffer_ = need == 64 ? 0 : buffer_ << need;
  avail_ -= need;
  consumed_ += width;
  return r;
}

std::vector<std::uint8_t> BitSource::draw_bits(std::size_t count) {
  std::vector<std::uint8_t> out(count);
  for (auto& b : out) b = static_cast<std::uint8_t>(draw_uint(1));
  return out;
}

std::uint64_t BitSource::draw_index_pow2(std::uint64_t n) {
  detail::require(is_pow2(n), "draw_index_pow2: n must be a power of 2");
  return draw_uint(log2_exact(n));
}

std::uint64_t BitReport::get(const std::string& component) const {
  auto it = per_component.find(component);
  return it == per_component.end() ? 0 : it->second;
}

std::uint64_t BitReport::total() const {
  return std::accumulate(per_component.begin(), per_component.end(), std::uint64_t{0},
                         [](std::uint64_t acc, const auto& kv) { return acc + kv.second; });
}

}  // namespace sjlt
