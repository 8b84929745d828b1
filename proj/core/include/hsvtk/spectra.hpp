// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "hsvtk/types.hpp"

namespace hsvtk::spectra {

/// Black-body illuminant normalized so its maximum on the grid is exactly 1.
struct Illuminant {
  double color_temperature_k = 0.0;
  Spectrum spectrum;
};

/// Planck's law B(lambda,T) = (2hc^2/lambda^5) / (exp(hc/(lambda kB T)) - 1),
/// sampled on `grid` and divided by its maximum. T must be in [1000, 20000] K.
Illuminant planck_spectrum(double temperature_k, const SpectralGrid& grid);

/// The nine-filter acquisition bank: six ideal rectangular bandpasses of
/// 50 nm bandwidth centered at 425/450/500/550/600/650 nm (transmission 1 on
/// grid points inside [c-25, c+25], 0 outside) plus red/green/blue rows equal
/// to the CIE 1931 color-matching curves normalized to peak 1.
FilterBank builtin_filter_bank(const SpectralGrid& grid = SpectralGrid::default_grid());

/// Loads a bank from CSV: a header row of wavelengths, then one row per
/// filter with values in [0,1]. An optional leading `name` column carries
/// filter names; otherwise rows are named filter0, filter1, ...
FilterBank load_filter_bank_csv(const std::filesystem::path& path,
                                const SpectralGrid& expected_grid);

/// Per pixel, channel i = sum_l F[i,l] * s(l) / sum_l F[i,l]. The row-sum
/// normalization keeps outputs of [0,1] cubes inside [0,1]; results are
/// clipped afterwards. Rows with zero sum are rejected.
ChannelStack apply_filters(const HyperCube& cube, const FilterBank& bank);

/// Same weighting without the final clip; exposed for linearity checks.
ChannelStack apply_filters_unclipped(const HyperCube& cube, const FilterBank& bank);

/// CIE 1931 2-degree color matching values sampled at a grid wavelength.
/// The grid must be the default 400-700 nm / 10 nm grid.
struct CieXyz {
  double x, y, z;
};
CieXyz cie_1931(double wavelength_nm);

/// Renders a cube to linear sRGB through CIE 1931 XYZ. XYZ is the per-pixel
/// sum over channels weighted by the color matching curves, normalized by the
/// sum of y-bar over the grid; the standard XYZ -> linear sRGB matrix is then
/// applied. render_rgb clips to [0,1]; the _linear variant does not.
RgbImage render_rgb(const HyperCube& cube);
RgbImage render_rgb_linear(const HyperCube& cube);

}  // namespace hsvtk::spectra
