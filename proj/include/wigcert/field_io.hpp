#pragma once

#include <string>

#include "wigcert/grid.hpp"

namespace wigcert {

/// Self-describing container formats. Binary: magic + header (dim_n, hbar,
/// label, per-axis points/half_extent) + row-major interleaved little-endian
/// float64 re/im pairs. CSV: commented header + index columns + re + im.
/// Paths ending in ".csv" select the CSV form; readers sniff the content.

void write_field(const Field& F, const std::string& path);
Field read_field(const std::string& path);

void write_wavefunction(const WaveFunction& f, const std::string& path);
WaveFunction read_wavefunction(const std::string& path);

}  // namespace wigcert
