#include "ris_sei/trace_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <system_error>

#include <fmt/format.h>

#include "ris_sei/errors.hpp"

namespace ris_sei {

namespace {

static_assert(std::endian::native == std::endian::little, "trace codec assumes a little-endian host");

template <typename T>
void put(std::string& out, T value) {
  char raw[sizeof(T)];
  std::memcpy(raw, &value, sizeof(T));
  out.append(raw, sizeof(T));
}

template <typename T>
T get(std::string_view bytes, std::size_t offset) {
  T value;
  std::memcpy(&value, bytes.data() + offset, sizeof(T));
  return value;
}

}  // namespace

std::string encode_trace(std::span<const Complex> samples, std::uint64_t sample_rate_hz) {
  std::string out;
  out.reserve(kTraceHeaderBytes + 8 * samples.size());
  out.append(kTraceMagic);
  put<std::uint64_t>(out, sample_rate_hz);
  put<std::uint64_t>(out, samples.size());
  for (const Complex& s : samples) {
    put<float>(out, static_cast<float>(s.real()));
    put<float>(out, static_cast<float>(s.imag()));
  }
  return out;
}

Trace decode_trace(std::string_view bytes) {
  if (bytes.size() < kTraceMagic.size() || bytes.substr(0, kTraceMagic.size()) != kTraceMagic) {
    throw Error(ErrorKind::BadMagic, "magic", "not a RISSEIQ1 trace");
  }
  if (bytes.size() < kTraceHeaderBytes) {
    throw Error(ErrorKind::TruncatedPayload, "header",
                fmt::format("{} bytes, header needs {}", bytes.size(), kTraceHeaderBytes));
  }
  Trace trace;
  trace.sample_rate_hz = get<std::uint64_t>(bytes, 8);
  const auto n = get<std::uint64_t>(bytes, 16);
  const std::size_t payload = bytes.size() - kTraceHeaderBytes;
  if (n > payload / 8 || payload != 8 * n) {
    throw Error(ErrorKind::TruncatedPayload, "payload",
                fmt::format("header declares {} samples but payload holds {} bytes", n, payload));
  }
  trace.block.samples.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::size_t at = kTraceHeaderBytes + 8 * i;
    trace.block.samples.emplace_back(get<float>(bytes, at), get<float>(bytes, at + 4));
  }
  return trace;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::UnreadablePath, path.string(), "cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::UnreadablePath, path.string(), "write failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::UnreadablePath, path.string(), "rename failed");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorKind::UnreadablePath, path.string(), "not a readable file");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::UnreadablePath, path.string(), "cannot open for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_trace(const std::filesystem::path& path, std::span<const Complex> samples,
                 std::uint64_t sample_rate_hz) {
  write_file_atomic(path, encode_trace(samples, sample_rate_hz));
}

Trace read_trace(const std::filesystem::path& path) { return decode_trace(read_file(path)); }

}  // namespace ris_sei
