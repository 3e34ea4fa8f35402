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

#ifndef FIDEL_AUDIO_HPP_
#define FIDEL_AUDIO_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fidel/manifest.hpp"

namespace fidel {

// 16-bit mono PCM.
struct PcmBuffer {
  std::vector<std::int16_t> samples;
  int sample_rate = 16000;
};

// RIFF wave, PCM 16-bit mono only; anything else is rejected.
PcmBuffer read_wav(std::istream& in);
PcmBuffer read_wav_file(const std::string& path);
void write_wav(std::ostream& out, const PcmBuffer& buf);
void write_wav_file(const std::string& path, const PcmBuffer& buf);

double signal_power(std::span<const std::int16_t> samples);

// Adds Gaussian noise scaled so that 10*log10(P_signal/P_noise) == snr_db.
// An infinite snr_db disables the noise. Saturating 16-bit clip.
// Throws EmptyBufferError.
PcmBuffer add_white_noise(const PcmBuffer& buf, double snr_db, std::uint64_t seed);

// Sums 1..3 backgrounds into the buffer, each looped to the foreground
// length from a seeded random start offset and scaled by its gain.
// Throws RateMismatchError / TooManyBackgroundsError.
PcmBuffer mix_background(const PcmBuffer& buf, std::span<const PcmBuffer> backgrounds,
                         std::span<const double> gains, std::uint64_t seed);

struct AugmentConfig {
  double snr_low_db = 5.0;
  double snr_high_db = 20.0;
  int max_backgrounds = 3;
  double background_gain = 0.3;
  // Copies per row: floor(multiplier) plus one more with probability
  // frac(multiplier); exact_count instead distributes exactly that many
  // copies round-robin (first rows get the remainder).
  double multiplier = 1.0;
  std::optional<std::int64_t> exact_count;
  std::uint64_t seed = 0;
  std::string out_dir;
};

struct AugmentResult {
  std::vector<ManifestRecord> manifest;  // originals plus augmented rows
  std::size_t augmented = 0;
  std::size_t io_failures = 0;  // rows skipped, run continues
};

// Augmented copies of manifest rows: white noise plus up to max_backgrounds
// other rows mixed in. Rows without audio_path produce bookkeeping rows
// only. Deterministic per (seed, row, copy).
AugmentResult augment_manifest(std::span<const ManifestRecord> manifest, const AugmentConfig& cfg);

}  // namespace fidel

#endif  // FIDEL_AUDIO_HPP_
