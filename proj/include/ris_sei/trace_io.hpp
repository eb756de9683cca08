#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "ris_sei/channel.hpp"

namespace ris_sei {

// Binary I/Q trace layout (little-endian):
//   bytes 0..7    magic "RISSEIQ1"
//   bytes 8..15   sample rate in Hz, uint64
//   bytes 16..23  sample count n, uint64
//   then n pairs of float32 (I, Q)
inline constexpr std::string_view kTraceMagic = "RISSEIQ1";
inline constexpr std::size_t kTraceHeaderBytes = 24;

struct Trace {
  std::uint64_t sample_rate_hz = 0;
  SampleBlock block;  // hypothesis left empty: the source is unknown
};

std::string encode_trace(std::span<const Complex> samples, std::uint64_t sample_rate_hz);

/// Throws BadMagic or TruncatedPayload.
Trace decode_trace(std::string_view bytes);

/// Samples are narrowed to float32. Written atomically.
void write_trace(const std::filesystem::path& path, std::span<const Complex> samples,
                 std::uint64_t sample_rate_hz);

/// Throws UnreadablePath, BadMagic or TruncatedPayload.
Trace read_trace(const std::filesystem::path& path);

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace ris_sei
