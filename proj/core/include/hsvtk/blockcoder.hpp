// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "hsvtk/error.hpp"

namespace hsvtk::codec {

/// Quantization step in 8-bit units: 2^((qp-4)/6), clamped below at 1.
/// Steps under one cannot refine an 8-bit source grid, and a step of exactly
/// one turns the coder into a lossless integer path.
double quant_step(int qp);

/// True when the step is 1 and the transform stage is bypassed (the block is
/// quantized in the pixel domain, which is the identity on integer inputs).
bool transform_bypassed(int qp);

/// Orthonormal 2D DCT-II of an n x n row-major block and its inverse. The DC
/// coefficient of a constant block v is v * n.
std::vector<double> dct2(const std::vector<double>& block, int n);
std::vector<double> idct2(const std::vector<double>& coefficients, int n);

/// JPEG-style zigzag index order generalized to n x n.
std::vector<int> zigzag_order(int n);

/// Quantized coefficients of one block: transform (or bypass), divide by the
/// step, round half away from zero, zigzag scan.
std::vector<std::int32_t> quantize_block(const std::vector<double>& block, int n, int qp);
std::vector<double> dequantize_block(const std::vector<std::int32_t>& coefficients, int n,
                                     int qp);

/// Signed 16-bit little-endian coefficient serialization.
std::vector<std::uint8_t> serialize_coefficients(const std::vector<std::int32_t>& coefficients);
std::vector<std::int32_t> parse_coefficients(const std::uint8_t* data, std::size_t size);

/// Raw DEFLATE (RFC 1951) compression of a byte buffer.
std::vector<std::uint8_t> deflate_bytes(const std::vector<std::uint8_t>& raw);
std::vector<std::uint8_t> inflate_bytes(const std::vector<std::uint8_t>& compressed);

/// Standalone coded unit for a single block (quantize, serialize, DEFLATE)
/// and its inverse; the codec pipeline uses the same primitives with
/// unit-level DEFLATE over many blocks.
std::vector<std::uint8_t> base_code_block(const std::vector<double>& block, int n, int qp);
std::vector<double> base_decode_block(const std::vector<std::uint8_t>& bytes, int n, int qp);

}  // namespace hsvtk::codec
