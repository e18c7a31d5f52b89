// src/audio_io.cc

// Copyright 2026  modspoof authors

// See ../../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "modspoof/audio_io.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_set>

#include "modspoof/error.h"

namespace modspoof {

namespace {

std::uint16_t get_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
  }
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

float get_f32(const std::uint8_t* p) { return std::bit_cast<float>(get_u32(p)); }

void put_f32(std::vector<std::uint8_t>& out, float v) {
  put_u32(out, std::bit_cast<std::uint32_t>(v));
}

constexpr std::uint16_t kWaveFormatPcm = 1;
constexpr std::uint16_t kWaveFormatFloat = 3;
constexpr std::uint16_t kWaveFormatExtensible = 0xFFFE;

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) {
      ++j;
    }
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    fn(text.substr(pos, end - pos), line_no);
    if (end == text.size()) break;
    pos = end + 1;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// WAV

AudioClip decode_wav(std::span<const std::uint8_t> bytes, int expected_rate) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error(ErrorCode::kFormat, "not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, block_align = 0, bits = 0;
  std::uint32_t rate = 0;
  const std::uint8_t* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::uint32_t size = get_u32(chunk + 4);
    const std::size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || body + size > bytes.size()) {
        throw Error(ErrorCode::kFormat, "truncated fmt chunk");
      }
      const std::uint8_t* f = bytes.data() + body;
      format = get_u16(f);
      channels = get_u16(f + 2);
      rate = get_u32(f + 4);
      block_align = get_u16(f + 12);
      bits = get_u16(f + 14);
      if (format == kWaveFormatExtensible) {
        if (size < 40) throw Error(ErrorCode::kFormat, "short extensible fmt");
        format = get_u16(f + 24);  // first two bytes of the subformat GUID
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (body + size > bytes.size()) {
        throw Error(ErrorCode::kFormat,
                    "data chunk declares " + std::to_string(size) +
                        " bytes but file is truncated");
      }
      data = bytes.data() + body;
      data_size = size;
      break;
    }
    pos = body + size + (size & 1u);
  }

  if (!have_fmt) throw Error(ErrorCode::kFormat, "missing fmt chunk");
  if (data == nullptr) throw Error(ErrorCode::kFormat, "missing data chunk");
  if (channels == 0) throw Error(ErrorCode::kFormat, "zero channels");

  const bool pcm16 = format == kWaveFormatPcm && bits == 16;
  const bool f32 = format == kWaveFormatFloat && bits == 32;
  if (!pcm16 && !f32) {
    throw Error(ErrorCode::kUnsupportedEncoding,
                "unsupported WAV encoding: format tag " +
                    std::to_string(format) + ", " + std::to_string(bits) +
                    " bits");
  }
  const std::size_t sample_bytes = bits / 8;
  if (block_align != channels * sample_bytes) {
    throw Error(ErrorCode::kFormat, "inconsistent block alignment");
  }
  if (data_size % block_align != 0) {
    throw Error(ErrorCode::kFormat, "data size is not a whole number of frames");
  }
  if (expected_rate > 0 && rate != static_cast<std::uint32_t>(expected_rate)) {
    throw Error(ErrorCode::kRateMismatch,
                "sample rate " + std::to_string(rate) + " Hz, expected " +
                    std::to_string(expected_rate) + " Hz");
  }

  const std::size_t frames = data_size / block_align;
  if (frames == 0) throw Error(ErrorCode::kEmptyInput, "WAV has no samples");
  AudioClip clip;
  clip.sample_rate = static_cast<int>(rate);
  clip.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      const std::uint8_t* p = data + i * block_align + c * sample_bytes;
      if (pcm16) {
        acc += static_cast<std::int16_t>(get_u16(p)) / 32768.0;
      } else {
        const float v = get_f32(p);
        if (!std::isfinite(v)) {
          throw Error(ErrorCode::kNonFinite, "non-finite float sample");
        }
        acc += v;
      }
    }
    clip.samples[i] = acc / channels;
  }
  return clip;
}

AudioClip read_wav(const std::filesystem::path& path, int expected_rate) {
  const auto bytes = read_file_bytes(path);
  try {
    return decode_wav(bytes, expected_rate);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_wav(std::span<const double> interleaved,
                                     int channels, int sample_rate,
                                     WavEncoding encoding) {
  if (channels <= 0 || interleaved.size() % channels != 0) {
    throw Error(ErrorCode::kInvalidArgument, "encode_wav: bad channel count");
  }
  const std::uint16_t bits = encoding == WavEncoding::kPcm16 ? 16 : 32;
  const std::uint16_t block = static_cast<std::uint16_t>(channels * bits / 8);
  const auto data_size = static_cast<std::uint32_t>(interleaved.size() * bits / 8);

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_size);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, encoding == WavEncoding::kPcm16 ? kWaveFormatPcm : kWaveFormatFloat);
  put_u16(out, static_cast<std::uint16_t>(channels));
  put_u32(out, static_cast<std::uint32_t>(sample_rate));
  put_u32(out, static_cast<std::uint32_t>(sample_rate) * block);
  put_u16(out, block);
  put_u16(out, bits);
  put_tag(out, "data");
  put_u32(out, data_size);
  for (double v : interleaved) {
    if (encoding == WavEncoding::kPcm16) {
      const double scaled = std::clamp(std::round(v * 32768.0), -32768.0, 32767.0);
      put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
    } else {
      put_f32(out, static_cast<float>(v));
    }
  }
  return out;
}

void write_wav(const std::filesystem::path& path, const AudioClip& clip,
               WavEncoding encoding) {
  write_file_bytes(path, encode_wav(clip.samples, 1, clip.sample_rate, encoding));
}

AudioClip fix_duration(const AudioClip& clip, double seconds,
                       double offset_seconds) {
  if (clip.samples.empty()) {
    throw Error(ErrorCode::kEmptyInput, "fix_duration: empty clip");
  }
  if (!(seconds > 0.0) || offset_seconds < 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "fix_duration: duration must be positive, offset nonnegative");
  }
  const double exact = seconds * clip.sample_rate;
  const double target = std::round(exact);
  if (std::abs(exact - target) > 1e-6) {
    throw Error(ErrorCode::kInvalidArgument,
                "fix_duration: duration is not a whole number of samples");
  }
  const auto length = static_cast<std::size_t>(target);
  const auto start = static_cast<std::size_t>(
      std::round(offset_seconds * clip.sample_rate));

  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.samples.assign(length, 0.0);
  if (start < clip.samples.size()) {
    const std::size_t n = std::min(length, clip.samples.size() - start);
    std::copy_n(clip.samples.begin() + static_cast<std::ptrdiff_t>(start), n,
                out.samples.begin());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Protocols and scores

std::string_view trial_key_name(TrialKey key) {
  return key == TrialKey::kBonafide ? "bonafide" : "spoof";
}

TrialKey parse_trial_key(std::string_view token) {
  if (token == "bonafide") return TrialKey::kBonafide;
  if (token == "spoof") return TrialKey::kSpoof;
  throw Error(ErrorCode::kParse,
              "unknown trial key '" + std::string(token) + "'");
}

std::vector<ProtocolEntry> parse_cm_protocol(std::string_view text) {
  std::vector<ProtocolEntry> entries;
  std::unordered_set<std::string> seen;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto fields = split_ws(line);
    if (fields.empty()) return;
    const std::string where = "protocol line " + std::to_string(line_no);
    if (fields.size() != 5) {
      throw Error(ErrorCode::kParse, where + ": expected 5 fields, got " +
                                         std::to_string(fields.size()));
    }
    ProtocolEntry e;
    e.speaker_id = std::string(fields[0]);
    e.utterance_id = std::string(fields[1]);
    e.attack = AttackId::parse(fields[3]);
    try {
      e.key = parse_trial_key(fields[4]);
    } catch (const Error& err) {
      throw Error(ErrorCode::kParse, where + ": " + err.what());
    }
    if ((e.key == TrialKey::kBonafide) != e.attack.is_bonafide()) {
      throw Error(ErrorCode::kParse,
                  where + ": key '" + std::string(fields[4]) +
                      "' inconsistent with attack '" + std::string(fields[3]) +
                      "'");
    }
    if (!seen.insert(e.utterance_id).second) {
      throw Error(ErrorCode::kDuplicate,
                  where + ": duplicate utterance " + e.utterance_id);
    }
    entries.push_back(std::move(e));
  });
  return entries;
}

std::string render_cm_protocol(std::span<const ProtocolEntry> entries) {
  std::string out;
  for (const auto& e : entries) {
    out += e.speaker_id + ' ' + e.utterance_id + " - " + e.attack.id() + ' ' +
           std::string(trial_key_name(e.key)) + '\n';
  }
  return out;
}

std::vector<ProtocolEntry> read_cm_protocol(const std::filesystem::path& path) {
  return parse_cm_protocol(read_file_text(path));
}

std::string render_scores(std::span<const ScoreRecord> records) {
  std::string out;
  char buf[64];
  for (const auto& r : records) {
    if (!std::isfinite(r.score)) {
      throw Error(ErrorCode::kNonFinite,
                  "refusing to write non-finite score for " + r.utterance_id);
    }
    std::snprintf(buf, sizeof(buf), "%.6f", r.score);
    out += r.utterance_id + ' ' + r.attack.id() + ' ' +
           std::string(trial_key_name(r.key)) + ' ' + buf + '\n';
  }
  return out;
}

std::vector<ScoreRecord> parse_scores(std::string_view text) {
  std::vector<ScoreRecord> records;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto fields = split_ws(line);
    if (fields.empty()) return;
    const std::string where = "score line " + std::to_string(line_no);
    if (fields.size() != 4) {
      throw Error(ErrorCode::kParse, where + ": expected 4 fields");
    }
    ScoreRecord r;
    r.utterance_id = std::string(fields[0]);
    r.attack = AttackId::parse(fields[1]);
    try {
      r.key = parse_trial_key(fields[2]);
    } catch (const Error& err) {
      throw Error(ErrorCode::kParse, where + ": " + err.what());
    }
    const std::string token(fields[3]);
    char* end = nullptr;
    r.score = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || !std::isfinite(r.score)) {
      throw Error(ErrorCode::kParse, where + ": bad score '" + token + "'");
    }
    records.push_back(std::move(r));
  });
  return records;
}

void write_scores(std::span<const ScoreRecord> records,
                  const std::filesystem::path& path) {
  write_file_text(path, render_scores(records));
}

std::vector<ScoreRecord> read_scores(const std::filesystem::path& path) {
  try {
    return parse_scores(read_file_text(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// GMF1

std::vector<std::uint8_t> encode_feature(const FeatureMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw Error(ErrorCode::kEmptyInput, "cannot write a feature with zero rows or columns");
  }
  if (m.rows() > UINT32_MAX || m.cols() > UINT32_MAX) {
    throw Error(ErrorCode::kInvalidArgument, "feature too large for GMF1");
  }
  std::vector<std::uint8_t> out;
  out.reserve(13 + 4 * m.size());
  put_tag(out, "GMF1");
  put_u32(out, static_cast<std::uint32_t>(m.rows()));
  put_u32(out, static_cast<std::uint32_t>(m.cols()));
  out.push_back(static_cast<std::uint8_t>(m.kind()));
  for (double v : m.values()) {
    const float f = static_cast<float>(v);
    if (!std::isfinite(f)) {
      throw Error(ErrorCode::kNonFinite, "feature value not representable as finite float32");
    }
    put_f32(out, f);
  }
  return out;
}

FeatureMatrix decode_feature(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 13 || std::memcmp(bytes.data(), "GMF1", 4) != 0) {
    throw Error(ErrorCode::kFormat, "bad GMF1 magic");
  }
  const std::uint32_t rows = get_u32(bytes.data() + 4);
  const std::uint32_t cols = get_u32(bytes.data() + 8);
  const auto kind = feature_kind_from_tag(bytes[12]);
  if (!kind) throw Error(ErrorCode::kFormat, "unknown feature kind tag");
  const std::uint64_t count = std::uint64_t{rows} * cols;
  if (bytes.size() != 13 + 4 * count) {
    throw Error(ErrorCode::kFormat,
                "GMF1 payload is " + std::to_string(bytes.size() - 13) +
                    " bytes, header implies " + std::to_string(4 * count));
  }
  std::vector<double> values(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    values[i] = get_f32(bytes.data() + 13 + 4 * i);
  }
  return FeatureMatrix(rows, cols, *kind, std::move(values));
}

void write_feature(const FeatureMatrix& m, const std::filesystem::path& path) {
  write_file_bytes(path, encode_feature(m));
}

FeatureMatrix read_feature(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  try {
    return decode_feature(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_file_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_bytes(const std::filesystem::path& path,
                      std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

void write_file_text(const std::filesystem::path& path, std::string_view text) {
  write_file_bytes(path, {reinterpret_cast<const std::uint8_t*>(text.data()),
                          text.size()});
}

}  // namespace modspoof
