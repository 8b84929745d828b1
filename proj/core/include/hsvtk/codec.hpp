// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "hsvtk/bitstream.hpp"
#include "hsvtk/blockcoder.hpp"
#include "hsvtk/motion.hpp"
#include "hsvtk/types.hpp"

namespace hsvtk::codec {

/// Pluggable transform stage behind the spectral prediction structure. The
/// default quantizes a 2D DCT (bypassed at step 1, see quant_step).
class BlockCoder {
 public:
  virtual ~BlockCoder() = default;
  virtual std::string id() const = 0;
  virtual std::vector<std::int32_t> code(const std::vector<double>& block, int n,
                                         int qp) const = 0;
  virtual std::vector<double> reconstruct(const std::vector<std::int32_t>& coefficients, int n,
                                          int qp) const = 0;
};

const BlockCoder& default_block_coder();

struct CodecConfig {
  int qp = 32;
  int block_size = 8;
  std::string motion_estimator_id = "diamond";
  std::string base_coder_id = "dct";

  void validate() const;  // qp in [0,51], block_size a power of two in [2,32]
};

/// Encoder-side record of one coded unit: which mode ran and which reference
/// channels fed the spectral prediction (newest first).
struct UnitTrace {
  int frame = 0;
  int channel = 0;
  UnitMode mode = UnitMode::anchor;
  std::vector<int> reference_channels;
};

struct EncodeResult {
  Bitstream bitstream;
  /// The encoder's internal reconstruction; bit-identical to decode() output.
  std::vector<HyperCube> reconstruction;
  std::vector<UnitTrace> trace;
};

/// Encodes a hyperspectral video (>= 1 frame, >= 4 channels, all frames the
/// same shape). Channels 0-2 are anchor-coded per frame; channels >= 3 take
/// the spectral intra path on even frames and the motion-compensated residual
/// path on odd frames. Pass a custom estimator/coder to override the
/// defaults; decode must then receive the same ones.
EncodeResult encode(const std::vector<HyperCube>& video, const CodecConfig& cfg,
                    const MotionEstimator* estimator = nullptr,
                    const BlockCoder* coder = nullptr);

std::vector<HyperCube> decode(const Bitstream& stream,
                              const MotionEstimator* estimator = nullptr,
                              const BlockCoder* coder = nullptr);

/// Pel-recursive spectral prediction of one channel from 1-3 decoded
/// reference channels (newest first), standalone: the causal border context
/// uses the channel's own values, as under lossless reconstruction. Blocks
/// are processed in raster order; per block the reference with the maximum
/// absolute context correlation is selected and recorded in the side info (one
/// entry per block), and per pixel a least-squares line through the context
/// pairs extrapolates the prediction.
struct IntraPrediction {
  Image prediction;                       // same size as the channel, [0,1] scale
  std::vector<std::uint8_t> ref_indices;  // per block, raster order
};
IntraPrediction intra_predict_channel(const Image& channel, const std::vector<Image>& refs,
                                      const CodecConfig& cfg);

}  // namespace hsvtk::codec
