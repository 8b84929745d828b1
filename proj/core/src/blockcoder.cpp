// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hsvtk/blockcoder.hpp"

#include <zlib.h>

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

namespace hsvtk::codec {

double quant_step(int qp) {
  detail::require(qp >= 0 && qp <= 51, "quant_step: qp outside [0,51]");
  return std::max(1.0, std::pow(2.0, (qp - 4) / 6.0));
}

bool transform_bypassed(int qp) { return quant_step(qp) == 1.0; }

namespace {

const std::vector<double>& dct_basis(int n) {
  static std::mutex mutex;
  static std::map<int, std::vector<double>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> basis(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / n);
    for (int i = 0; i < n; ++i) {
      basis[static_cast<std::size_t>(k) * n + i] =
          scale * std::cos(std::numbers::pi * (2.0 * i + 1.0) * k / (2.0 * n));
    }
  }
  return cache.emplace(n, std::move(basis)).first->second;
}

void require_block(const std::vector<double>& block, int n, const char* who) {
  detail::require(n >= 1, std::string(who) + ": block size must be positive");
  detail::require(block.size() == static_cast<std::size_t>(n) * n,
                  std::string(who) + ": block size mismatch");
}

long long iround(double v) { return std::llround(v); }

}  // namespace

std::vector<double> dct2(const std::vector<double>& block, int n) {
  require_block(block, n, "dct2");
  const std::vector<double>& a = dct_basis(n);
  std::vector<double> tmp(block.size(), 0.0);
  // rows: tmp = X * A^T
  for (int y = 0; y < n; ++y) {
    for (int k = 0; k < n; ++k) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        sum += block[static_cast<std::size_t>(y) * n + i] * a[static_cast<std::size_t>(k) * n + i];
      }
      tmp[static_cast<std::size_t>(y) * n + k] = sum;
    }
  }
  std::vector<double> out(block.size(), 0.0);
  // columns: out = A * tmp
  for (int k = 0; k < n; ++k) {
    for (int x = 0; x < n; ++x) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        sum += a[static_cast<std::size_t>(k) * n + i] * tmp[static_cast<std::size_t>(i) * n + x];
      }
      out[static_cast<std::size_t>(k) * n + x] = sum;
    }
  }
  return out;
}

std::vector<double> idct2(const std::vector<double>& coefficients, int n) {
  require_block(coefficients, n, "idct2");
  const std::vector<double>& a = dct_basis(n);
  std::vector<double> tmp(coefficients.size(), 0.0);
  // columns: tmp = A^T * C
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      double sum = 0.0;
      for (int k = 0; k < n; ++k) {
        sum += a[static_cast<std::size_t>(k) * n + y] *
               coefficients[static_cast<std::size_t>(k) * n + x];
      }
      tmp[static_cast<std::size_t>(y) * n + x] = sum;
    }
  }
  std::vector<double> out(coefficients.size(), 0.0);
  // rows: out = tmp * A
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      double sum = 0.0;
      for (int k = 0; k < n; ++k) {
        sum += tmp[static_cast<std::size_t>(y) * n + k] * a[static_cast<std::size_t>(k) * n + x];
      }
      out[static_cast<std::size_t>(y) * n + x] = sum;
    }
  }
  return out;
}

std::vector<int> zigzag_order(int n) {
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n) * n);
  for (int s = 0; s <= 2 * (n - 1); ++s) {
    if (s % 2 == 0) {
      // up-right: start at the lowest row of the diagonal
      for (int y = std::min(s, n - 1); y >= std::max(0, s - n + 1); --y) {
        order.push_back(y * n + (s - y));
      }
    } else {
      for (int x = std::min(s, n - 1); x >= std::max(0, s - n + 1); --x) {
        order.push_back((s - x) * n + x);
      }
    }
  }
  return order;
}

std::vector<std::int32_t> quantize_block(const std::vector<double>& block, int n, int qp) {
  require_block(block, n, "quantize_block");
  const double step = quant_step(qp);
  const std::vector<int> order = zigzag_order(n);
  std::vector<double> coefficients = transform_bypassed(qp) ? block : dct2(block, n);
  std::vector<std::int32_t> out(block.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const long long q = iround(coefficients[static_cast<std::size_t>(order[i])] / step);
    detail::require(q >= std::numeric_limits<std::int16_t>::min() &&
                        q <= std::numeric_limits<std::int16_t>::max(),
                    "quantize_block: coefficient exceeds the 16-bit range");
    out[i] = static_cast<std::int32_t>(q);
  }
  return out;
}

std::vector<double> dequantize_block(const std::vector<std::int32_t>& coefficients, int n,
                                     int qp) {
  detail::require(coefficients.size() == static_cast<std::size_t>(n) * n,
                  "dequantize_block: coefficient count mismatch");
  const double step = quant_step(qp);
  const std::vector<int> order = zigzag_order(n);
  std::vector<double> scan(coefficients.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    scan[static_cast<std::size_t>(order[i])] = coefficients[i] * step;
  }
  return transform_bypassed(qp) ? scan : idct2(scan, n);
}

std::vector<std::uint8_t> serialize_coefficients(const std::vector<std::int32_t>& coefficients) {
  std::vector<std::uint8_t> out;
  out.reserve(coefficients.size() * 2);
  for (std::int32_t c : coefficients) {
    const auto v = static_cast<std::uint16_t>(static_cast<std::int16_t>(c));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  return out;
}

std::vector<std::int32_t> parse_coefficients(const std::uint8_t* data, std::size_t size) {
  detail::require(size % 2 == 0, "parse_coefficients: odd byte count");
  std::vector<std::int32_t> out(size / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto v = static_cast<std::uint16_t>(data[2 * i] | (data[2 * i + 1] << 8));
    out[i] = static_cast<std::int16_t>(v);
  }
  return out;
}

std::vector<std::uint8_t> deflate_bytes(const std::vector<std::uint8_t>& raw) {
  z_stream stream{};
  detail::require(deflateInit2(&stream, 6, Z_DEFLATED, -15, 8, Z_DEFAULT_STRATEGY) == Z_OK,
                  "deflate_bytes: zlib init failed");
  std::vector<std::uint8_t> out(deflateBound(&stream, static_cast<uLong>(raw.size())));
  stream.next_in = const_cast<Bytef*>(raw.data());
  stream.avail_in = static_cast<uInt>(raw.size());
  stream.next_out = out.data();
  stream.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&stream, Z_FINISH);
  deflateEnd(&stream);
  detail::require(rc == Z_STREAM_END, "deflate_bytes: compression failed");
  out.resize(out.size() - stream.avail_out);
  return out;
}

std::vector<std::uint8_t> inflate_bytes(const std::vector<std::uint8_t>& compressed) {
  z_stream stream{};
  detail::require(inflateInit2(&stream, -15) == Z_OK, "inflate_bytes: zlib init failed");
  std::vector<std::uint8_t> out;
  out.resize(std::max<std::size_t>(1024, compressed.size() * 4));
  stream.next_in = const_cast<Bytef*>(compressed.data());
  stream.avail_in = static_cast<uInt>(compressed.size());
  std::size_t produced = 0;
  int rc = Z_OK;
  do {
    if (produced == out.size()) out.resize(out.size() * 2);
    stream.next_out = out.data() + produced;
    stream.avail_out = static_cast<uInt>(out.size() - produced);
    rc = inflate(&stream, Z_NO_FLUSH);
    produced = out.size() - stream.avail_out;
    if (rc == Z_STREAM_END) break;
    if (rc != Z_OK) {
      inflateEnd(&stream);
      throw Error("inflate_bytes: corrupt DEFLATE stream");
    }
  } while (true);
  inflateEnd(&stream);
  out.resize(produced);
  return out;
}

std::vector<std::uint8_t> base_code_block(const std::vector<double>& block, int n, int qp) {
  return deflate_bytes(serialize_coefficients(quantize_block(block, n, qp)));
}

std::vector<double> base_decode_block(const std::vector<std::uint8_t>& bytes, int n, int qp) {
  const std::vector<std::uint8_t> raw = inflate_bytes(bytes);
  const std::vector<std::int32_t> coefficients = parse_coefficients(raw.data(), raw.size());
  detail::require(coefficients.size() == static_cast<std::size_t>(n) * n,
                  "base_decode_block: coefficient count mismatch");
  return dequantize_block(coefficients, n, qp);
}

}  // namespace hsvtk::codec
