// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hsvtk/bitstream.hpp"

#include <cstring>
#include <fstream>

namespace hsvtk::codec {

namespace {

constexpr char kMagic[4] = {'H', 'S', 'V', 'C'};
constexpr std::uint16_t kVersion = 1;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8() {
    need(1);
    return bytes_[pos_++];
  }
  std::uint16_t u16() {
    need(2);
    const std::uint16_t v =
        static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::vector<std::uint8_t> blob(std::size_t size) {
    need(size);
    std::vector<std::uint8_t> out(bytes_.begin() + static_cast<std::ptrdiff_t>(pos_),
                                  bytes_.begin() + static_cast<std::ptrdiff_t>(pos_ + size));
    pos_ += size;
    return out;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) throw StreamError("bitstream: truncated");
  }
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> Bitstream::serialize() const {
  std::vector<std::uint8_t> out;
  out.reserve(byte_size());
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u16(out, header.version);
  put_u16(out, header.width);
  put_u16(out, header.height);
  out.push_back(header.channels);
  put_u16(out, header.frames);
  out.push_back(header.qp);
  out.push_back(header.block_size);
  for (const BitstreamUnit& unit : units) {
    put_u16(out, unit.frame);
    out.push_back(unit.channel);
    out.push_back(static_cast<std::uint8_t>(unit.mode));
    put_u32(out, static_cast<std::uint32_t>(unit.payload.size()));
    out.insert(out.end(), unit.payload.begin(), unit.payload.end());
  }
  return out;
}

Bitstream Bitstream::parse(std::span<const std::uint8_t> bytes) {
  Reader reader(bytes);
  char magic[4];
  for (char& c : magic) c = static_cast<char>(reader.u8());
  if (std::memcmp(magic, kMagic, 4) != 0) throw StreamError("bitstream: bad magic");

  Bitstream stream;
  stream.header.version = reader.u16();
  if (stream.header.version != kVersion) {
    throw StreamError("bitstream: unsupported version " +
                      std::to_string(stream.header.version));
  }
  stream.header.width = reader.u16();
  stream.header.height = reader.u16();
  stream.header.channels = reader.u8();
  stream.header.frames = reader.u16();
  stream.header.qp = reader.u8();
  stream.header.block_size = reader.u8();

  while (!reader.done()) {
    BitstreamUnit unit;
    unit.frame = reader.u16();
    unit.channel = reader.u8();
    const std::uint8_t mode = reader.u8();
    if (mode > 2) throw StreamError("bitstream: unknown unit mode");
    unit.mode = static_cast<UnitMode>(mode);
    const std::uint32_t size = reader.u32();
    unit.payload = reader.blob(size);
    stream.units.push_back(std::move(unit));
  }
  return stream;
}

void Bitstream::save(const std::filesystem::path& path) const {
  const std::vector<std::uint8_t> bytes = serialize();
  std::ofstream out(path, std::ios::binary);
  detail::require(out.good(), "Bitstream::save: cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  detail::require(out.good(), "Bitstream::save: write failed for " + path.string());
}

Bitstream Bitstream::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  detail::require(in.good(), "Bitstream::load: cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return parse(bytes);
}

std::size_t Bitstream::byte_size() const {
  std::size_t size = 15;  // magic + header
  for (const BitstreamUnit& unit : units) size += 8 + unit.payload.size();
  return size;
}

}  // namespace hsvtk::codec
