#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

namespace net {

class ByteBuffer {
 public:
  ByteBuffer() = default;
  explicit ByteBuffer(std::size_t capacity);
  void write(const void* data, std::size_t len);
  std::size_t size() const { return data_.size(); }
  std::uint8_t at(std::size_t pos) const;

 private:
  std::vector<std::uint8_t> data_;
  std::size_t count = 0;
};

ByteBuffer::ByteBuffer(std::size_t capacity) { data_.reserve(capacity); }

void ByteBuffer::write(const void* data, std::size_t len) {
  const auto* bytes = static_cast<const std::uint8_t*>(data);
  data_.insert(data_.end(), bytes, bytes + len);
  count += len;
}

std::uint8_t ByteBuffer::at(std::size_t pos) const {
  if (pos >= data_.size()) throw std::out_of_range("ByteBuffer::at");
  return data_[pos];
}

std::uint32_t readBigEndian32(const std::uint8_t* buf) {
  std::uint32_t value = 0;
  for (int shift = 0; shift < 4; ++shift) {
    value = (value << 8) | buf[shift];
  }
  return value;
}

std::uint16_t checksum16(const std::vector<std::uint8_t>& packet) {
  std::uint32_t acc = 0;
  for (std::size_t idx = 0; idx + 1 < packet.size(); idx += 2) {
    acc += static_cast<std::uint32_t>(packet[idx] << 8 | packet[idx + 1]);
  }
  if (packet.size() % 2 != 0) acc += packet.back() << 8;
  while (acc >> 16) acc = (acc & 0xFFFF) + (acc >> 16);
  return static_cast<std::uint16_t>(~acc);
}

std::string hexDump(const std::uint8_t* bytes, std::size_t n) {
  static const char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t k = 0; k < n; ++k) {
    out += kDigits[bytes[k] >> 4];
    out += kDigits[bytes[k] & 0xF];
  }
  return out;
}

bool parsePort(const std::string& text, int& port) {
  try {
    std::size_t used = 0;
    int parsed = std::stoi(text, &used);
    if (used != text.size() || parsed <= 0 || parsed > 65535) return false;
    port = parsed;
    return true;
  } catch (const std::exception& e) {
    (void)e;
    return false;
  }
}

int retryCount(int attempts, int maxAttempts) {
  int remaining = maxAttempts - attempts;
  return remaining < 0 ? 0 : remaining;
}

void copyBlock(char* dst, const char* src, std::size_t len) {
  if (len == 0) return;
  std::memcpy(dst, src, len);
}

}  // namespace net
