// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hsvtk/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hsvtk::spectra {

namespace {

// CIE 1931 2-degree standard observer, 400-700 nm at 10 nm.
constexpr int kCieCount = 31;
constexpr double kCieTable[kCieCount][3] = {
    {0.014310, 0.000396, 0.067850},  // 400
    {0.043510, 0.001210, 0.207400},  // 410
    {0.134380, 0.004000, 0.645600},  // 420
    {0.283900, 0.011600, 1.385600},  // 430
    {0.348280, 0.023000, 1.747060},  // 440
    {0.336200, 0.038000, 1.772110},  // 450
    {0.290800, 0.060000, 1.669200},  // 460
    {0.195360, 0.090980, 1.287640},  // 470
    {0.095640, 0.139020, 0.812950},  // 480
    {0.032010, 0.208020, 0.465180},  // 490
    {0.004900, 0.323000, 0.272000},  // 500
    {0.009300, 0.503000, 0.158200},  // 510
    {0.063270, 0.710000, 0.078250},  // 520
    {0.165500, 0.862000, 0.042160},  // 530
    {0.290400, 0.954000, 0.020300},  // 540
    {0.433450, 0.994950, 0.008750},  // 550
    {0.594500, 0.995000, 0.003900},  // 560
    {0.762100, 0.952000, 0.002100},  // 570
    {0.916300, 0.870000, 0.001650},  // 580
    {1.026300, 0.757000, 0.001100},  // 590
    {1.062200, 0.631000, 0.000800},  // 600
    {1.002600, 0.503000, 0.000340},  // 610
    {0.854450, 0.381000, 0.000190},  // 620
    {0.642400, 0.265000, 0.000050},  // 630
    {0.447900, 0.175000, 0.000020},  // 640
    {0.283500, 0.107000, 0.000000},  // 650
    {0.164900, 0.061000, 0.000000},  // 660
    {0.087400, 0.032000, 0.000000},  // 670
    {0.046770, 0.017000, 0.000000},  // 680
    {0.022700, 0.008210, 0.000000},  // 690
    {0.011359, 0.004102, 0.000000},  // 700
};

int cie_index(double wavelength_nm) {
  const double pos = (wavelength_nm - 400.0) / 10.0;
  const int i = static_cast<int>(std::lround(pos));
  detail::require(i >= 0 && i < kCieCount && std::abs(pos - i) < 1e-9,
                  "cie_1931: wavelength not on the default grid");
  return i;
}

void require_default_grid(const SpectralGrid& grid, const char* who) {
  detail::require(grid == SpectralGrid::default_grid(),
                  std::string(who) + ": requires the default 400-700 nm grid");
}

}  // namespace

Illuminant planck_spectrum(double temperature_k, const SpectralGrid& grid) {
  detail::require(temperature_k >= 1000.0 && temperature_k <= 20000.0,
                  "planck_spectrum: temperature outside [1000, 20000] K");
  constexpr double h = 6.62607015e-34;   // J s
  constexpr double c = 2.99792458e8;     // m/s
  constexpr double kb = 1.380649e-23;    // J/K

  std::vector<double> values(static_cast<std::size_t>(grid.size()));
  double max_value = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    const double lambda_m = grid[i] * 1e-9;
    const double radiance = (2.0 * h * c * c / std::pow(lambda_m, 5)) /
                            (std::exp(h * c / (lambda_m * kb * temperature_k)) - 1.0);
    values[static_cast<std::size_t>(i)] = radiance;
    max_value = std::max(max_value, radiance);
  }
  for (double& v : values) v /= max_value;

  Illuminant illuminant;
  illuminant.color_temperature_k = temperature_k;
  illuminant.spectrum = Spectrum{grid, std::move(values)};
  illuminant.spectrum.validate();
  return illuminant;
}

FilterBank builtin_filter_bank(const SpectralGrid& grid) {
  require_default_grid(grid, "builtin_filter_bank");
  std::vector<FilterBank::Row> rows;

  const double centers[6] = {425.0, 450.0, 500.0, 550.0, 600.0, 650.0};
  for (double center : centers) {
    FilterBank::Row row;
    row.name = "bp" + std::to_string(static_cast<int>(center));
    row.transmission.resize(static_cast<std::size_t>(grid.size()), 0.0);
    for (int i = 0; i < grid.size(); ++i) {
      if (grid[i] >= center - 25.0 && grid[i] <= center + 25.0) {
        row.transmission[static_cast<std::size_t>(i)] = 1.0;
      }
    }
    rows.push_back(std::move(row));
  }

  double peaks[3] = {0.0, 0.0, 0.0};
  for (const auto& entry : kCieTable) {
    for (int c = 0; c < 3; ++c) peaks[c] = std::max(peaks[c], entry[c]);
  }
  const char* names[3] = {"red", "green", "blue"};
  for (int c = 0; c < 3; ++c) {
    FilterBank::Row row;
    row.name = names[c];
    row.transmission.resize(static_cast<std::size_t>(grid.size()));
    for (int i = 0; i < grid.size(); ++i) {
      row.transmission[static_cast<std::size_t>(i)] = kCieTable[i][c] / peaks[c];
    }
    rows.push_back(std::move(row));
  }

  return FilterBank(grid, std::move(rows));
}

FilterBank load_filter_bank_csv(const std::filesystem::path& path,
                                const SpectralGrid& expected_grid) {
  std::ifstream in(path);
  detail::require(in.good(), "load_filter_bank_csv: cannot open " + path.string());

  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream stream(line);
    std::string cell;
    while (std::getline(stream, cell, ',')) cells.push_back(cell);
    return cells;
  };

  std::string line;
  detail::require(static_cast<bool>(std::getline(in, line)),
                  "load_filter_bank_csv: empty file " + path.string());
  std::vector<std::string> header = split(line);
  bool named = false;
  if (!header.empty()) {
    try {
      (void)std::stod(header.front());
    } catch (const std::exception&) {
      named = true;
    }
  }
  const std::size_t first_col = named ? 1 : 0;
  detail::require(header.size() - first_col == static_cast<std::size_t>(expected_grid.size()),
                  "load_filter_bank_csv: header wavelength count does not match grid");
  for (int i = 0; i < expected_grid.size(); ++i) {
    const double wl = std::stod(header[first_col + static_cast<std::size_t>(i)]);
    detail::require(std::abs(wl - expected_grid[i]) < 1e-9,
                    "load_filter_bank_csv: header wavelengths do not match grid");
  }

  std::vector<FilterBank::Row> rows;
  int index = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells = split(line);
    detail::require(cells.size() == header.size(),
                    "load_filter_bank_csv: row width does not match header");
    FilterBank::Row row;
    row.name = named ? cells.front() : "filter" + std::to_string(index);
    for (std::size_t i = first_col; i < cells.size(); ++i) {
      row.transmission.push_back(std::stod(cells[i]));
    }
    rows.push_back(std::move(row));
    ++index;
  }
  detail::require(!rows.empty(), "load_filter_bank_csv: no filter rows in " + path.string());
  return FilterBank(expected_grid, std::move(rows));
}

namespace {

ChannelStack apply_filters_impl(const HyperCube& cube, const FilterBank& bank, bool clip) {
  detail::require(cube.grid() == bank.grid(), "apply_filters: spectral grids do not match");

  ChannelStack out;
  out.names.reserve(static_cast<std::size_t>(bank.row_count()));
  out.channels.reserve(static_cast<std::size_t>(bank.row_count()));

  for (int r = 0; r < bank.row_count(); ++r) {
    const FilterBank::Row& row = bank.row(r);
    double weight_sum = 0.0;
    for (double w : row.transmission) weight_sum += w;
    detail::require(weight_sum > 0.0,
                    "apply_filters: filter row '" + row.name + "' has zero transmission");

    Image channel(cube.width(), cube.height());
    const std::size_t pixels = channel.pixel_count();
    for (int ch = 0; ch < cube.channel_count(); ++ch) {
      const double w = row.transmission[static_cast<std::size_t>(ch)] / weight_sum;
      if (w == 0.0) continue;
      const std::vector<double>& src = cube.channel(ch).data();
      std::vector<double>& dst = channel.data();
      for (std::size_t i = 0; i < pixels; ++i) dst[i] += w * src[i];
    }
    if (clip) {
      for (double& v : channel.data()) v = std::clamp(v, 0.0, 1.0);
    }
    out.names.push_back(row.name);
    out.channels.push_back(std::move(channel));
  }
  return out;
}

}  // namespace

ChannelStack apply_filters(const HyperCube& cube, const FilterBank& bank) {
  return apply_filters_impl(cube, bank, true);
}

ChannelStack apply_filters_unclipped(const HyperCube& cube, const FilterBank& bank) {
  return apply_filters_impl(cube, bank, false);
}

CieXyz cie_1931(double wavelength_nm) {
  const int i = cie_index(wavelength_nm);
  return {kCieTable[i][0], kCieTable[i][1], kCieTable[i][2]};
}

RgbImage render_rgb_linear(const HyperCube& cube) {
  require_default_grid(cube.grid(), "render_rgb");

  double ybar_sum = 0.0;
  for (const auto& entry : kCieTable) ybar_sum += entry[1];

  RgbImage out;
  out.r = Image(cube.width(), cube.height());
  out.g = Image(cube.width(), cube.height());
  out.b = Image(cube.width(), cube.height());

  const std::size_t pixels = out.r.pixel_count();
  std::vector<double> xs(pixels, 0.0), ys(pixels, 0.0), zs(pixels, 0.0);
  for (int ch = 0; ch < cube.channel_count(); ++ch) {
    const std::vector<double>& src = cube.channel(ch).data();
    const double wx = kCieTable[ch][0] / ybar_sum;
    const double wy = kCieTable[ch][1] / ybar_sum;
    const double wz = kCieTable[ch][2] / ybar_sum;
    for (std::size_t i = 0; i < pixels; ++i) {
      xs[i] += wx * src[i];
      ys[i] += wy * src[i];
      zs[i] += wz * src[i];
    }
  }

  // XYZ -> linear sRGB (IEC 61966-2-1 primaries, D65 white).
  for (std::size_t i = 0; i < pixels; ++i) {
    out.r.data()[i] = 3.2404542 * xs[i] - 1.5371385 * ys[i] - 0.4985314 * zs[i];
    out.g.data()[i] = -0.9692660 * xs[i] + 1.8760108 * ys[i] + 0.0415560 * zs[i];
    out.b.data()[i] = 0.0556434 * xs[i] - 0.2040259 * ys[i] + 1.0572252 * zs[i];
  }
  return out;
}

RgbImage render_rgb(const HyperCube& cube) {
  RgbImage out = render_rgb_linear(cube);
  for (Image* ch : {&out.r, &out.g, &out.b}) {
    for (double& v : ch->data()) v = std::clamp(v, 0.0, 1.0);
  }
  return out;
}

}  // namespace hsvtk::spectra
