// Copyright 2026 The tdoped Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TDOPED_RNG_H
#define TDOPED_RNG_H

#include <cstdint>
#include <random>
#include <string_view>

namespace tdoped {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// FNV-1a of a short tag, used to separate experiment kinds.
constexpr uint64_t tag_hash(std::string_view tag) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Counter-based stream split: the seed of sample `index` depends only on
/// (master, tag, index), never on which worker draws it.
constexpr uint64_t derive_seed(uint64_t master, std::string_view tag, uint64_t index) {
    return mix64(mix64(master ^ tag_hash(tag)) + mix64(index));
}

inline Rng sample_stream(uint64_t master, std::string_view tag, uint64_t index) {
    return Rng(derive_seed(master, tag, index));
}

}  // namespace tdoped

#endif
