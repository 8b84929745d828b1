// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hsvtk/error.hpp"

namespace hsvtk::codec {

enum class UnitMode : std::uint8_t { anchor = 0, intra = 1, residual = 2 };

/// Raised for malformed containers and version mismatches.
class StreamError : public Error {
 public:
  using Error::Error;
};

struct BitstreamHeader {
  std::uint16_t version = 1;
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  std::uint8_t channels = 0;
  std::uint16_t frames = 0;
  std::uint8_t qp = 0;
  std::uint8_t block_size = 0;
};

struct BitstreamUnit {
  std::uint16_t frame = 0;
  std::uint8_t channel = 0;
  UnitMode mode = UnitMode::anchor;
  std::vector<std::uint8_t> payload;
};

/// Serialized container: little-endian, magic "HSVC", u16 version, u16 width,
/// u16 height, u8 channels, u16 frames, u8 qp, u8 block_size, then units as
/// (u16 frame, u8 channel, u8 mode, u32 payload length, payload).
struct Bitstream {
  BitstreamHeader header;
  std::vector<BitstreamUnit> units;

  std::vector<std::uint8_t> serialize() const;
  static Bitstream parse(std::span<const std::uint8_t> bytes);

  void save(const std::filesystem::path& path) const;
  static Bitstream load(const std::filesystem::path& path);

  /// Size of the serialized stream in bytes.
  std::size_t byte_size() const;
};

}  // namespace hsvtk::codec
