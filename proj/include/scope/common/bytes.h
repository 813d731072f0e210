// Copyright 2026 The SCOPE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCOPE_COMMON_BYTES_H_
#define SCOPE_COMMON_BYTES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace scope {

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;

std::string ToHex(ByteSpan bytes);
absl::StatusOr<Bytes> FromHex(std::string_view hex);

// Returns true if `needle` occurs as a contiguous run inside `haystack`.
bool ContainsSubsequence(ByteSpan haystack, ByteSpan needle);

// Appends big-endian integers and raw runs to a growing buffer.
class ByteWriter {
 public:
  ByteWriter() = default;

  void PutU8(uint8_t v) { out_.push_back(v); }
  void PutU16(uint16_t v);
  void PutU32(uint32_t v);
  void PutU64(uint64_t v);
  void PutBytes(ByteSpan bytes) { out_.insert(out_.end(), bytes.begin(), bytes.end()); }

  size_t size() const { return out_.size(); }
  const Bytes& bytes() const& { return out_; }
  Bytes Take() && { return std::move(out_); }

 private:
  Bytes out_;
};

// Bounds-checked big-endian reader. Every getter fails with OutOfRange
// instead of reading past the end; `context` names the section in errors.
class ByteReader {
 public:
  ByteReader(ByteSpan data, std::string_view context)
      : data_(data), context_(context) {}

  absl::StatusOr<uint8_t> GetU8();
  absl::StatusOr<uint16_t> GetU16();
  absl::StatusOr<uint32_t> GetU32();
  absl::StatusOr<uint64_t> GetU64();
  absl::StatusOr<ByteSpan> GetBytes(size_t n);
  // Peeks at the next byte without consuming it.
  absl::StatusOr<uint8_t> PeekU8() const;

  void set_context(std::string_view context) { context_ = std::string(context); }
  const std::string& context() const { return context_; }

  size_t remaining() const { return data_.size() - pos_; }
  size_t position() const { return pos_; }
  bool empty() const { return remaining() == 0; }

 private:
  absl::Status Truncated(size_t wanted) const;

  ByteSpan data_;
  size_t pos_ = 0;
  std::string context_;
};

}  // namespace scope

#endif  // SCOPE_COMMON_BYTES_H_
