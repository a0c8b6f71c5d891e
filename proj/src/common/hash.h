// Copyright 2026 The Burnscreen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BURNSCREEN_COMMON_HASH_H_
#define BURNSCREEN_COMMON_HASH_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace burnscreen {

// Lowercase hex SHA-256 digest.
std::string Sha256Hex(std::string_view data);

// Stable 64-bit FNV-1a, used for seeding per-item generators.
uint64_t Fnv1a64(std::string_view data);

// Hex encoding of `num_bytes` bytes from the system CSPRNG.
std::string RandomToken(int num_bytes = 16);

}  // namespace burnscreen

#endif  // BURNSCREEN_COMMON_HASH_H_
