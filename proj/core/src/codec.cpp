// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hsvtk/codec.hpp"

#include <algorithm>
#include <cmath>

namespace hsvtk::codec {

namespace {

class DctBlockCoder : public BlockCoder {
 public:
  std::string id() const override { return "dct"; }
  std::vector<std::int32_t> code(const std::vector<double>& block, int n, int qp) const override {
    return quantize_block(block, n, qp);
  }
  std::vector<double> reconstruct(const std::vector<std::int32_t>& coefficients, int n,
                                  int qp) const override {
    return dequantize_block(coefficients, n, qp);
  }
};

long long iround(double v) { return std::llround(v); }

Image pad_to_blocks(const Image& plane, int n) {
  const int pw = ((plane.width() + n - 1) / n) * n;
  const int ph = ((plane.height() + n - 1) / n) * n;
  Image out(pw, ph);
  for (int y = 0; y < ph; ++y) {
    const int sy = std::min(y, plane.height() - 1);
    for (int x = 0; x < pw; ++x) {
      out(x, y) = plane(std::min(x, plane.width() - 1), sy);
    }
  }
  return out;
}

Image crop(const Image& plane, int width, int height) {
  Image out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) out(x, y) = plane(x, y);
  }
  return out;
}

Image to_8bit_units(const Image& plane) {
  Image out = plane;
  for (double& v : out.data()) v *= 255.0;
  return out;
}

Image from_8bit_units(const Image& plane) {
  Image out = plane;
  for (double& v : out.data()) v /= 255.0;
  return out;
}

// Pearson correlation magnitude of the context pairs, or -1 when undefined.
double context_correlation(const Image& ref, const Image& context,
                           const std::vector<std::pair<int, int>>& positions) {
  const double n = static_cast<double>(positions.size());
  if (positions.size() < 2) return -1.0;
  double sr = 0.0, sb = 0.0, srr = 0.0, sbb = 0.0, srb = 0.0;
  for (const auto& [x, y] : positions) {
    const double r = ref(x, y);
    const double b = context(x, y);
    sr += r;
    sb += b;
    srr += r * r;
    sbb += b * b;
    srb += r * b;
  }
  const double var_r = n * srr - sr * sr;
  const double var_b = n * sbb - sb * sb;
  if (var_r <= 0.0 || var_b <= 0.0) return -1.0;
  return std::abs((n * srb - sr * sb) / std::sqrt(var_r * var_b));
}

// Pel-recursive prediction of one block. `border_source` provides the causal
// border values (reconstructed pixels in the coding loop); predictions of the
// block itself join the regression context as they are produced. Returns the
// reference index used.
int predict_block(const std::vector<const Image*>& refs, const Image& border_source, int bx,
                  int by, int n, double lo, double hi, int forced_ref, Image& prediction) {
  const int x0 = bx * n;
  const int y0 = by * n;

  std::vector<std::pair<int, int>> border;
  border.reserve(static_cast<std::size_t>(2 * n));
  if (y0 > 0) {
    for (int x = x0; x < x0 + n; ++x) border.emplace_back(x, y0 - 1);
  }
  if (x0 > 0) {
    for (int y = y0; y < y0 + n; ++y) border.emplace_back(x0 - 1, y);
  }

  int chosen = forced_ref;
  if (chosen < 0) {
    chosen = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < refs.size(); ++i) {
      const double rho = context_correlation(*refs[i], border_source, border);
      if (rho > best) {
        best = rho;
        chosen = static_cast<int>(i);
      }
    }
  }
  detail::require(chosen >= 0 && chosen < static_cast<int>(refs.size()),
                  "predict_block: reference index out of range");
  const Image& ref = *refs[static_cast<std::size_t>(chosen)];

  double cnt = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : border) {
    const double r = ref(x, y);
    const double b = border_source(x, y);
    cnt += 1.0;
    sx += r;
    sy += b;
    sxx += r * r;
    sxy += r * b;
  }

  for (int y = y0; y < y0 + n; ++y) {
    for (int x = x0; x < x0 + n; ++x) {
      const double r = ref(x, y);
      double value;
      if (cnt == 0.0) {
        value = r;  // no context yet: copy the reference
      } else {
        const double denom = cnt * sxx - sx * sx;
        if (cnt < 2.0 || denom <= 1e-12 * std::max(1.0, cnt * sxx)) {
          value = sy / cnt;  // flat or single-pair context: its mean level
        } else {
          const double alpha = (cnt * sxy - sx * sy) / denom;
          const double beta = (sy - alpha * sx) / cnt;
          value = alpha * r + beta;
        }
      }
      const double clamped = std::clamp(static_cast<double>(iround(value)), lo, hi);
      prediction(x, y) = clamped;
      cnt += 1.0;
      sx += r;
      sy += clamped;
      sxx += r * r;
      sxy += r * clamped;
    }
  }
  return chosen;
}

struct CodedUnit {
  std::vector<std::uint8_t> payload;
  Image recon8;
};

std::vector<std::uint8_t> pack_ref_indices(const std::vector<std::uint8_t>& indices) {
  std::vector<std::uint8_t> out((indices.size() + 3) / 4, 0);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out[i / 4] = static_cast<std::uint8_t>(out[i / 4] | ((indices[i] & 0x3) << (2 * (i % 4))));
  }
  return out;
}

std::vector<std::uint8_t> unpack_ref_indices(const std::uint8_t* data, std::size_t count) {
  std::vector<std::uint8_t> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = static_cast<std::uint8_t>((data[i / 4] >> (2 * (i % 4))) & 0x3);
  }
  return out;
}

// Codes one padded 8-bit-unit plane against 0-3 reference planes and returns
// the payload plus the reconstruction the decoder will reproduce.
CodedUnit code_unit(const Image& signal8, const std::vector<const Image*>& refs8, int n, int qp,
                    double lo, double hi, const BlockCoder& coder) {
  const int blocks_x = signal8.width() / n;
  const int blocks_y = signal8.height() / n;
  const std::size_t nblocks = static_cast<std::size_t>(blocks_x) * blocks_y;

  CodedUnit unit;
  unit.recon8 = Image(signal8.width(), signal8.height());
  Image prediction(signal8.width(), signal8.height());
  std::vector<std::uint8_t> ref_indices;
  ref_indices.reserve(nblocks);
  std::vector<std::int32_t> coefficients;
  coefficients.reserve(nblocks * static_cast<std::size_t>(n) * n);

  std::vector<double> block(static_cast<std::size_t>(n) * n);
  for (int by = 0; by < blocks_y; ++by) {
    for (int bx = 0; bx < blocks_x; ++bx) {
      if (!refs8.empty()) {
        const int chosen = predict_block(refs8, unit.recon8, bx, by, n, lo, hi, -1, prediction);
        ref_indices.push_back(static_cast<std::uint8_t>(chosen));
      }
      for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
          const int px = bx * n + x;
          const int py = by * n + y;
          const double pred = refs8.empty() ? 0.0 : prediction(px, py);
          block[static_cast<std::size_t>(y) * n + x] = signal8(px, py) - pred;
        }
      }
      const std::vector<std::int32_t> q = coder.code(block, n, qp);
      coefficients.insert(coefficients.end(), q.begin(), q.end());
      const std::vector<double> deq = coder.reconstruct(q, n, qp);
      for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
          const int px = bx * n + x;
          const int py = by * n + y;
          const double pred = refs8.empty() ? 0.0 : prediction(px, py);
          unit.recon8(px, py) =
              std::clamp(pred + deq[static_cast<std::size_t>(y) * n + x], lo, hi);
        }
      }
    }
  }

  std::vector<std::uint8_t> raw;
  if (!refs8.empty()) raw = pack_ref_indices(ref_indices);
  const std::vector<std::uint8_t> coeff_bytes = serialize_coefficients(coefficients);
  raw.insert(raw.end(), coeff_bytes.begin(), coeff_bytes.end());
  unit.payload = deflate_bytes(raw);
  return unit;
}

Image decode_unit(const std::vector<std::uint8_t>& payload, const std::vector<const Image*>& refs8,
                  int pw, int ph, int n, int qp, double lo, double hi, const BlockCoder& coder) {
  const int blocks_x = pw / n;
  const int blocks_y = ph / n;
  const std::size_t nblocks = static_cast<std::size_t>(blocks_x) * blocks_y;
  const std::size_t block_len = static_cast<std::size_t>(n) * n;

  const std::vector<std::uint8_t> raw = inflate_bytes(payload);
  std::size_t offset = 0;
  std::vector<std::uint8_t> ref_indices;
  if (!refs8.empty()) {
    const std::size_t packed = (nblocks + 3) / 4;
    if (raw.size() < packed) throw StreamError("unit payload: truncated side info");
    ref_indices = unpack_ref_indices(raw.data(), nblocks);
    offset = packed;
    for (std::uint8_t idx : ref_indices) {
      if (idx >= refs8.size()) throw StreamError("unit payload: reference index out of range");
    }
  }
  const std::size_t expected = nblocks * block_len * 2;
  if (raw.size() - offset != expected) throw StreamError("unit payload: coefficient size mismatch");
  const std::vector<std::int32_t> coefficients =
      parse_coefficients(raw.data() + offset, raw.size() - offset);

  Image recon8(pw, ph);
  Image prediction(pw, ph);
  std::vector<std::int32_t> q(block_len);
  std::size_t cursor = 0;
  for (int by = 0; by < blocks_y; ++by) {
    for (int bx = 0; bx < blocks_x; ++bx) {
      if (!refs8.empty()) {
        const int forced = ref_indices[static_cast<std::size_t>(by) * blocks_x + bx];
        predict_block(refs8, recon8, bx, by, n, lo, hi, forced, prediction);
      }
      std::copy(coefficients.begin() + static_cast<std::ptrdiff_t>(cursor),
                coefficients.begin() + static_cast<std::ptrdiff_t>(cursor + block_len),
                q.begin());
      cursor += block_len;
      const std::vector<double> deq = coder.reconstruct(q, n, qp);
      for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
          const int px = bx * n + x;
          const int py = by * n + y;
          const double pred = refs8.empty() ? 0.0 : prediction(px, py);
          recon8(px, py) = std::clamp(pred + deq[static_cast<std::size_t>(y) * n + x], lo, hi);
        }
      }
    }
  }
  return recon8;
}

// Integer motion-compensated prediction of one channel in 8-bit units.
Image motion_prediction_8bit(const Image& dec_prev, const Image& dec_next,
                             const MotionField& fw, const MotionField& bw) {
  auto [p_fw, m_fw] = motion_compensate(dec_prev, fw);
  auto [p_bw, m_bw] = motion_compensate(dec_next, bw);
  const Image merged = merge_predictions(p_fw, p_bw, m_fw, m_bw);
  Image out(merged.width(), merged.height());
  for (std::size_t i = 0; i < out.pixel_count(); ++i) {
    out.data()[i] = std::clamp(static_cast<double>(iround(255.0 * merged.data()[i])), 0.0, 255.0);
  }
  return out;
}

// The unit emission schedule: channels 0-2 anchor-coded every frame; channels
// >= 3 intra on even frames and motion-compensated residual on odd frames.
// Even frames stream first so an odd frame always follows its two neighbors.
std::vector<std::tuple<int, int, UnitMode>> unit_schedule(int frames, int channels) {
  std::vector<std::tuple<int, int, UnitMode>> schedule;
  for (int pass = 0; pass < 2; ++pass) {
    for (int t = pass; t < frames; t += 2) {
      for (int c = 0; c < 3; ++c) schedule.emplace_back(t, c, UnitMode::anchor);
      for (int c = 3; c < channels; ++c) {
        schedule.emplace_back(t, c, pass == 0 ? UnitMode::intra : UnitMode::residual);
      }
    }
  }
  return schedule;
}

const MotionEstimator& resolve_estimator(const std::string& id, const MotionEstimator* custom) {
  if (custom != nullptr) return *custom;
  detail::require(id == "diamond",
                  "codec: unknown motion estimator id '" + id + "' and no instance supplied");
  return default_motion_estimator();
}

const BlockCoder& resolve_coder(const std::string& id, const BlockCoder* custom) {
  if (custom != nullptr) return *custom;
  detail::require(id == "dct",
                  "codec: unknown base coder id '" + id + "' and no instance supplied");
  return default_block_coder();
}

// Shared encode/decode state machine. In encoding mode it produces units from
// the source video; in decoding mode it consumes them. Both sides run the
// identical reconstruction arithmetic, which is what makes the coder
// drift-free.
struct Pipeline {
  int width, height, channels, frames, n, qp;
  double lo_direct = 0.0, hi_direct = 255.0;
  const MotionEstimator* estimator;
  const BlockCoder* coder;

  const std::vector<HyperCube>* source = nullptr;  // encode mode only
  std::vector<std::vector<Image>> decoded;         // [frame][channel], [0,1]

  Bitstream* out_stream = nullptr;              // encode mode
  const Bitstream* in_stream = nullptr;         // decode mode
  std::vector<UnitTrace>* trace = nullptr;

  Image source_plane8(int t, int c) const {
    return pad_to_blocks(to_8bit_units(source->at(static_cast<std::size_t>(t))
                                           .channel(c)),
                         n);
  }

  // Codes or decodes one unit and returns its reconstruction (8-bit units,
  // padded).
  Image process_unit(std::size_t unit_index, int t, int c, UnitMode mode,
                     const std::vector<const Image*>& refs8, double lo, double hi,
                     const Image* signal8) {
    if (source != nullptr) {
      CodedUnit unit = code_unit(*signal8, refs8, n, qp, lo, hi, *coder);
      BitstreamUnit su;
      su.frame = static_cast<std::uint16_t>(t);
      su.channel = static_cast<std::uint8_t>(c);
      su.mode = mode;
      su.payload = std::move(unit.payload);
      out_stream->units.push_back(std::move(su));
      if (trace != nullptr) {
        UnitTrace entry;
        entry.frame = t;
        entry.channel = c;
        entry.mode = mode;
        for (std::size_t i = 0; i < refs8.size(); ++i) {
          entry.reference_channels.push_back(c - 1 - static_cast<int>(i));
        }
        trace->push_back(std::move(entry));
      }
      return std::move(unit.recon8);
    }
    const BitstreamUnit& su = in_stream->units[unit_index];
    if (su.frame != t || su.channel != c || su.mode != mode) {
      throw StreamError("bitstream: unit order violates the coding schedule");
    }
    const int pw = ((width + n - 1) / n) * n;
    const int ph = ((height + n - 1) / n) * n;
    return decode_unit(su.payload, refs8, pw, ph, n, qp, lo, hi, *coder);
  }

  void run() {
    decoded.assign(static_cast<std::size_t>(frames),
                   std::vector<Image>(static_cast<std::size_t>(channels)));
    const auto schedule = unit_schedule(frames, channels);
    if (in_stream != nullptr && in_stream->units.size() != schedule.size()) {
      throw StreamError("bitstream: unit count does not match the coding schedule");
    }

    std::size_t unit_index = 0;
    // Even pass: anchors plus spectral intra channels.
    for (int t = 0; t < frames; t += 2) {
      std::vector<Image> refs_storage;
      for (int c = 0; c < 3; ++c) {
        Image signal8;
        if (source != nullptr) signal8 = source_plane8(t, c);
        Image recon8 = process_unit(unit_index++, t, c, UnitMode::anchor, {}, 0.0, 255.0,
                                    source ? &signal8 : nullptr);
        decoded[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)] =
            from_8bit_units(crop(recon8, width, height));
        refs_storage.push_back(std::move(recon8));
      }
      std::vector<const Image*> refs8 = {&refs_storage[2], &refs_storage[1], &refs_storage[0]};
      for (int c = 3; c < channels; ++c) {
        Image signal8;
        if (source != nullptr) signal8 = source_plane8(t, c);
        Image recon8 = process_unit(unit_index++, t, c, UnitMode::intra, refs8, 0.0, 255.0,
                                    source ? &signal8 : nullptr);
        decoded[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)] =
            from_8bit_units(crop(recon8, width, height));
        refs_storage.push_back(std::move(recon8));
        refs8 = {&refs_storage[refs_storage.size() - 1],
                 &refs_storage[refs_storage.size() - 2],
                 &refs_storage[refs_storage.size() - 3]};
      }
    }

    // Odd pass: anchors, then motion-compensated residual channels.
    for (int t = 1; t < frames; t += 2) {
      std::vector<Image> anchor_recon8;
      for (int c = 0; c < 3; ++c) {
        Image signal8;
        if (source != nullptr) signal8 = source_plane8(t, c);
        Image recon8 = process_unit(unit_index++, t, c, UnitMode::anchor, {}, 0.0, 255.0,
                                    source ? &signal8 : nullptr);
        decoded[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)] =
            from_8bit_units(crop(recon8, width, height));
        anchor_recon8.push_back(std::move(recon8));
      }

      // The last odd frame of the sequence has no later neighbor; the forward
      // neighbor substitutes for it.
      const int t_next = t + 1 < frames ? t + 1 : t - 1;
      const auto& prev = decoded[static_cast<std::size_t>(t - 1)];
      const auto& cur = decoded[static_cast<std::size_t>(t)];
      const auto& next = decoded[static_cast<std::size_t>(t_next)];
      const AnchorFrame af_prev{&prev[0], &prev[1], &prev[2]};
      const AnchorFrame af_cur{&cur[0], &cur[1], &cur[2]};
      const AnchorFrame af_next{&next[0], &next[1], &next[2]};
      const auto [fw, bw] = estimator->estimate(af_prev, af_cur, af_next);

      // Residuals of the decoded anchors seed the reference buffer.
      std::vector<Image> refs_storage;
      for (int c = 0; c < 3; ++c) {
        const Image pm8 = pad_to_blocks(
            motion_prediction_8bit(prev[static_cast<std::size_t>(c)],
                                   next[static_cast<std::size_t>(c)], fw, bw),
            n);
        Image residual8(pm8.width(), pm8.height());
        for (std::size_t i = 0; i < residual8.pixel_count(); ++i) {
          residual8.data()[i] = anchor_recon8[static_cast<std::size_t>(c)].data()[i] -
                                pm8.data()[i];
        }
        refs_storage.push_back(std::move(residual8));
      }
      std::vector<const Image*> refs8 = {&refs_storage[2], &refs_storage[1], &refs_storage[0]};

      for (int c = 3; c < channels; ++c) {
        const Image pm8 = pad_to_blocks(
            motion_prediction_8bit(prev[static_cast<std::size_t>(c)],
                                   next[static_cast<std::size_t>(c)], fw, bw),
            n);
        Image signal8;
        if (source != nullptr) {
          signal8 = source_plane8(t, c);
          for (std::size_t i = 0; i < signal8.pixel_count(); ++i) {
            signal8.data()[i] -= pm8.data()[i];
          }
        }
        Image residual_recon8 = process_unit(unit_index++, t, c, UnitMode::residual, refs8,
                                             -255.0, 255.0, source ? &signal8 : nullptr);
        Image dec8(pm8.width(), pm8.height());
        for (std::size_t i = 0; i < dec8.pixel_count(); ++i) {
          dec8.data()[i] =
              std::clamp(pm8.data()[i] + residual_recon8.data()[i], 0.0, 255.0);
        }
        decoded[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)] =
            from_8bit_units(crop(dec8, width, height));
        refs_storage.push_back(std::move(residual_recon8));
        refs8 = {&refs_storage[refs_storage.size() - 1],
                 &refs_storage[refs_storage.size() - 2],
                 &refs_storage[refs_storage.size() - 3]};
      }
    }
  }

  std::vector<HyperCube> assemble(const SpectralGrid& grid) {
    std::vector<HyperCube> cubes;
    cubes.reserve(static_cast<std::size_t>(frames));
    for (int t = 0; t < frames; ++t) {
      std::vector<Image> planes;
      planes.reserve(static_cast<std::size_t>(channels));
      for (int c = 0; c < channels; ++c) {
        planes.push_back(std::move(decoded[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)]));
      }
      cubes.emplace_back(grid, std::move(planes));
    }
    return cubes;
  }
};

}  // namespace

const BlockCoder& default_block_coder() {
  static const DctBlockCoder instance;
  return instance;
}

void CodecConfig::validate() const {
  detail::require(qp >= 0 && qp <= 51, "CodecConfig: qp outside [0,51]");
  detail::require(block_size >= 2 && block_size <= 32 &&
                      (block_size & (block_size - 1)) == 0,
                  "CodecConfig: block_size must be a power of two in [2,32]");
}

EncodeResult encode(const std::vector<HyperCube>& video, const CodecConfig& cfg,
                    const MotionEstimator* estimator, const BlockCoder* coder) {
  cfg.validate();
  detail::require(!video.empty(), "encode: need at least one frame");
  const HyperCube& first = video.front();
  detail::require(first.channel_count() >= 4, "encode: need at least four channels");
  detail::require(first.channel_count() <= 255 && video.size() <= 65535 &&
                      first.width() <= 65535 && first.height() <= 65535,
                  "encode: dimensions exceed the container limits");
  for (const HyperCube& cube : video) {
    detail::require(cube.width() == first.width() && cube.height() == first.height() &&
                        cube.grid() == first.grid(),
                    "encode: all frames must share dimensions and grid");
  }

  EncodeResult result;
  result.bitstream.header.width = static_cast<std::uint16_t>(first.width());
  result.bitstream.header.height = static_cast<std::uint16_t>(first.height());
  result.bitstream.header.channels = static_cast<std::uint8_t>(first.channel_count());
  result.bitstream.header.frames = static_cast<std::uint16_t>(video.size());
  result.bitstream.header.qp = static_cast<std::uint8_t>(cfg.qp);
  result.bitstream.header.block_size = static_cast<std::uint8_t>(cfg.block_size);

  Pipeline pipeline;
  pipeline.width = first.width();
  pipeline.height = first.height();
  pipeline.channels = first.channel_count();
  pipeline.frames = static_cast<int>(video.size());
  pipeline.n = cfg.block_size;
  pipeline.qp = cfg.qp;
  pipeline.estimator = &resolve_estimator(cfg.motion_estimator_id, estimator);
  pipeline.coder = &resolve_coder(cfg.base_coder_id, coder);
  pipeline.source = &video;
  pipeline.out_stream = &result.bitstream;
  pipeline.trace = &result.trace;
  pipeline.run();

  result.reconstruction = pipeline.assemble(first.grid());
  return result;
}

std::vector<HyperCube> decode(const Bitstream& stream, const MotionEstimator* estimator,
                              const BlockCoder* coder) {
  const BitstreamHeader& header = stream.header;
  detail::require(header.channels >= 4, "decode: header advertises fewer than four channels");
  detail::require(header.width >= 1 && header.height >= 1 && header.frames >= 1,
                  "decode: empty stream dimensions");
  CodecConfig cfg;
  cfg.qp = header.qp;
  cfg.block_size = header.block_size;
  cfg.validate();

  Pipeline pipeline;
  pipeline.width = header.width;
  pipeline.height = header.height;
  pipeline.channels = header.channels;
  pipeline.frames = header.frames;
  pipeline.n = cfg.block_size;
  pipeline.qp = cfg.qp;
  pipeline.estimator = &resolve_estimator(cfg.motion_estimator_id, estimator);
  pipeline.coder = &resolve_coder(cfg.base_coder_id, coder);
  pipeline.in_stream = &stream;
  pipeline.run();

  const SpectralGrid grid = header.channels == 31 ? SpectralGrid::default_grid()
                                                  : SpectralGrid::uniform(header.channels);
  return pipeline.assemble(grid);
}

IntraPrediction intra_predict_channel(const Image& channel, const std::vector<Image>& refs,
                                      const CodecConfig& cfg) {
  cfg.validate();
  detail::require(!refs.empty() && refs.size() <= 3,
                  "intra_predict_channel: one to three reference channels required");
  for (const Image& ref : refs) {
    detail::require(ref.same_size(channel), "intra_predict_channel: dimensions disagree");
  }
  const int n = cfg.block_size;
  const Image channel8 = pad_to_blocks(to_8bit_units(channel), n);
  std::vector<Image> refs8_storage;
  refs8_storage.reserve(refs.size());
  for (const Image& ref : refs) refs8_storage.push_back(pad_to_blocks(to_8bit_units(ref), n));
  std::vector<const Image*> refs8;
  for (const Image& ref : refs8_storage) refs8.push_back(&ref);

  Image prediction8(channel8.width(), channel8.height());
  IntraPrediction out;
  const int blocks_x = channel8.width() / n;
  const int blocks_y = channel8.height() / n;
  for (int by = 0; by < blocks_y; ++by) {
    for (int bx = 0; bx < blocks_x; ++bx) {
      const int chosen =
          predict_block(refs8, channel8, bx, by, n, 0.0, 255.0, -1, prediction8);
      out.ref_indices.push_back(static_cast<std::uint8_t>(chosen));
    }
  }
  out.prediction = from_8bit_units(crop(prediction8, channel.width(), channel.height()));
  return out;
}

}  // namespace hsvtk::codec
