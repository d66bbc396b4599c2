#pragma once

#include <cstdint>

// Unit conventions shared by the whole library.
//
//   sizes      bytes, decimal prefixes (1 GB = 10^9 B)
//   bandwidth  Mbps = 10^6 bits/s
//   compute    MFLOP = 10^6 floating-point operations, power in MFLOPS
//   time       seconds since simulation start
//
// Conversion helpers are exact for integer inputs below 2^53.

namespace diana::units {

using Seconds = double;
using Bytes = double;
using Mbps = double;
using Mflop = double;
using Mflops = double;

inline constexpr double kBitsPerByte = 8.0;
inline constexpr double kBitsPerMegabit = 1e6;
inline constexpr double kBytesPerMegabyte = 1e6;
inline constexpr double kBytesPerGigabyte = 1e9;
inline constexpr double kFlopPerMflop = 1e6;

constexpr Bytes gigabytes(double gb) { return gb * kBytesPerGigabyte; }
constexpr Bytes megabytes(double mb) { return mb * kBytesPerMegabyte; }
constexpr double to_gigabytes(Bytes b) { return b / kBytesPerGigabyte; }
constexpr double to_megabytes(Bytes b) { return b / kBytesPerMegabyte; }

constexpr double bits(Bytes b) { return b * kBitsPerByte; }
constexpr double bits_per_second(Mbps m) { return m * kBitsPerMegabit; }
constexpr Mbps to_mbps(double bps) { return bps / kBitsPerMegabit; }

constexpr double flop(Mflop m) { return m * kFlopPerMflop; }
constexpr Mflop to_mflop(double f) { return f / kFlopPerMflop; }

}  // namespace diana::units
