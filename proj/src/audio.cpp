//
//   Copyright 2026 The Fidel Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//

#include "fidel/audio.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "fidel/errors.hpp"
#include "fidel/rng.hpp"

namespace fidel {

namespace {

std::int16_t clip16(double v) {
  if (v > 32767.0) return 32767;
  if (v < -32768.0) return -32768;
  return static_cast<std::int16_t>(std::lround(v));
}

std::uint32_t read_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint16_t read_u16(std::istream& in) {
  unsigned char b[2];
  in.read(reinterpret_cast<char*>(b), 2);
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

void write_u32(std::ostream& out, std::uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
               static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
  out.write(b, 4);
}

void write_u16(std::ostream& out, std::uint16_t v) {
  char b[2] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF)};
  out.write(b, 2);
}

}  // namespace

PcmBuffer read_wav(std::istream& in) {
  char tag[4];
  in.read(tag, 4);
  if (!in || std::memcmp(tag, "RIFF", 4) != 0) throw FormatError("not a RIFF file");
  read_u32(in);  // riff size
  in.read(tag, 4);
  if (!in || std::memcmp(tag, "WAVE", 4) != 0) throw FormatError("not a WAVE file");

  PcmBuffer buf;
  bool have_fmt = false;
  for (;;) {
    in.read(tag, 4);
    if (!in) throw FormatError("wave file has no data chunk");
    std::uint32_t size = read_u32(in);
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      std::uint16_t format = read_u16(in);
      std::uint16_t channels = read_u16(in);
      std::uint32_t rate = read_u32(in);
      read_u32(in);  // byte rate
      read_u16(in);  // block align
      std::uint16_t bits = read_u16(in);
      if (format != 1 || bits != 16) throw FormatError("only 16-bit PCM wave is supported");
      if (channels != 1) throw FormatError("only mono wave is supported");
      buf.sample_rate = static_cast<int>(rate);
      if (size > 16) in.ignore(size - 16);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      if (!have_fmt) throw FormatError("wave data chunk precedes fmt chunk");
      buf.samples.resize(size / 2);
      in.read(reinterpret_cast<char*>(buf.samples.data()),
              static_cast<std::streamsize>(buf.samples.size() * 2));
      if (!in) throw FormatError("truncated wave data");
      return buf;
    } else {
      in.ignore(size + (size & 1));
    }
  }
}

PcmBuffer read_wav_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open wave file: " + path);
  return read_wav(in);
}

void write_wav(std::ostream& out, const PcmBuffer& buf) {
  std::uint32_t data_bytes = static_cast<std::uint32_t>(buf.samples.size() * 2);
  out.write("RIFF", 4);
  write_u32(out, 36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  write_u32(out, 16);
  write_u16(out, 1);  // PCM
  write_u16(out, 1);  // mono
  write_u32(out, static_cast<std::uint32_t>(buf.sample_rate));
  write_u32(out, static_cast<std::uint32_t>(buf.sample_rate * 2));
  write_u16(out, 2);
  write_u16(out, 16);
  out.write("data", 4);
  write_u32(out, data_bytes);
  out.write(reinterpret_cast<const char*>(buf.samples.data()),
            static_cast<std::streamsize>(data_bytes));
}

void write_wav_file(const std::string& path, const PcmBuffer& buf) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  write_wav(out, buf);
}

double signal_power(std::span<const std::int16_t> samples) {
  double sum = 0.0;
  for (std::int16_t s : samples) sum += static_cast<double>(s) * static_cast<double>(s);
  return samples.empty() ? 0.0 : sum / static_cast<double>(samples.size());
}

PcmBuffer add_white_noise(const PcmBuffer& buf, double snr_db, std::uint64_t seed) {
  if (buf.samples.empty()) throw EmptyBufferError("add_white_noise: empty buffer");
  if (std::isinf(snr_db)) return buf;
  double p_signal = signal_power(buf.samples);
  double p_noise = p_signal / std::pow(10.0, snr_db / 10.0);
  double sigma = std::sqrt(p_noise);
  SplitMix64 rng(seed);
  PcmBuffer out;
  out.sample_rate = buf.sample_rate;
  out.samples.resize(buf.samples.size());
  for (std::size_t i = 0; i < buf.samples.size(); ++i)
    out.samples[i] = clip16(static_cast<double>(buf.samples[i]) + sigma * rng.next_gaussian());
  return out;
}

PcmBuffer mix_background(const PcmBuffer& buf, std::span<const PcmBuffer> backgrounds,
                         std::span<const double> gains, std::uint64_t seed) {
  if (buf.samples.empty()) throw EmptyBufferError("mix_background: empty buffer");
  if (backgrounds.empty()) throw TooManyBackgroundsError("mix_background: need 1..3 backgrounds");
  if (backgrounds.size() > 3)
    throw TooManyBackgroundsError("mix_background: at most 3 backgrounds, got " +
                                  std::to_string(backgrounds.size()));
  if (gains.size() != backgrounds.size())
    throw FormatError("mix_background: one gain per background");
  for (const PcmBuffer& bg : backgrounds) {
    if (bg.sample_rate != buf.sample_rate)
      throw RateMismatchError("mix_background: sample rate " + std::to_string(bg.sample_rate) +
                              " != " + std::to_string(buf.sample_rate));
    if (bg.samples.empty()) throw EmptyBufferError("mix_background: empty background");
  }

  SplitMix64 rng(seed);
  std::vector<std::size_t> offsets;
  for (const PcmBuffer& bg : backgrounds)
    offsets.push_back(rng.next_below(bg.samples.size()));

  PcmBuffer out;
  out.sample_rate = buf.sample_rate;
  out.samples.resize(buf.samples.size());
  for (std::size_t i = 0; i < buf.samples.size(); ++i) {
    double v = static_cast<double>(buf.samples[i]);
    for (std::size_t b = 0; b < backgrounds.size(); ++b) {
      const std::vector<std::int16_t>& s = backgrounds[b].samples;
      v += gains[b] * static_cast<double>(s[(offsets[b] + i) % s.size()]);
    }
    out.samples[i] = clip16(v);
  }
  return out;
}

AugmentResult augment_manifest(std::span<const ManifestRecord> manifest, const AugmentConfig& cfg) {
  AugmentResult result;
  result.manifest.assign(manifest.begin(), manifest.end());

  const std::size_t n = manifest.size();
  std::vector<std::int64_t> copies(n, 0);
  if (cfg.exact_count) {
    std::int64_t total = *cfg.exact_count;
    if (total < 0) throw FormatError("augment count must be nonnegative");
    if (n > 0) {
      std::int64_t base = total / static_cast<std::int64_t>(n);
      std::int64_t extra = total % static_cast<std::int64_t>(n);
      for (std::size_t i = 0; i < n; ++i)
        copies[i] = base + (static_cast<std::int64_t>(i) < extra ? 1 : 0);
    }
  } else {
    if (cfg.multiplier < 0) throw FormatError("augment multiplier must be nonnegative");
    double whole;
    double frac = std::modf(cfg.multiplier, &whole);
    for (std::size_t i = 0; i < n; ++i) {
      SplitMix64 rng = SplitMix64::for_stream(cfg.seed, static_cast<std::uint64_t>(i) << 12);
      copies[i] = static_cast<std::int64_t>(whole) + (rng.next_double() < frac ? 1 : 0);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const ManifestRecord& row = manifest[i];
    for (std::int64_t j = 0; j < copies[i]; ++j) {
      // one stream per (row, copy); copy counts above 4094 are not expected
      SplitMix64 rng = SplitMix64::for_stream(
          cfg.seed, (static_cast<std::uint64_t>(i) << 12) + static_cast<std::uint64_t>(j) + 1);
      ManifestRecord aug = row;
      aug.id = row.id + "-aug" + std::to_string(j + 1);
      aug.audio_path.clear();
      if (!row.audio_path.empty()) {
        try {
          PcmBuffer clean = read_wav_file(row.audio_path);
          double snr = cfg.snr_low_db + rng.next_double() * (cfg.snr_high_db - cfg.snr_low_db);
          PcmBuffer noisy = add_white_noise(clean, snr, rng.next());
          int max_bg = std::min(cfg.max_backgrounds, 3);
          std::size_t n_bg = max_bg > 0 ? rng.next_below(static_cast<std::uint64_t>(max_bg) + 1) : 0;
          std::vector<PcmBuffer> bgs;
          std::vector<double> gains;
          for (std::size_t b = 0; b < n_bg && n > 1; ++b) {
            std::size_t pick = rng.next_below(n - 1);
            if (pick >= i) ++pick;  // never self
            if (manifest[pick].audio_path.empty()) continue;
            bgs.push_back(read_wav_file(manifest[pick].audio_path));
            gains.push_back(cfg.background_gain);
          }
          PcmBuffer mixed = bgs.empty() ? noisy : mix_background(noisy, bgs, gains, rng.next());
          std::string out_path = cfg.out_dir + "/" + aug.id + ".wav";
          write_wav_file(out_path, mixed);
          aug.audio_path = out_path;
        } catch (const Error&) {
          ++result.io_failures;
          continue;
        }
      }
      result.manifest.push_back(std::move(aug));
      ++result.augmented;
    }
  }
  return result;
}

}  // namespace fidel
