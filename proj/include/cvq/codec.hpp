/*
Copyright 2026 The cvq authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cvq/families.hpp"

namespace cvq {

// Coded-stream layout (all multibyte integers little-endian):
//
//   magic "CVQ1" (4 bytes)
//   u16  cell count
//   per cell, in canonical order (length, then cell id):
//     u8 id length, id bytes, u8 code length
//   u8   padding-bit count
//   u64  symbol count
//   payload bits, MSB-first, padded to a byte boundary
//
// Codes are canonical, so (cell id, length) pairs fully determine them and
// a reloaded codebook reproduces bit-identical streams.

struct CodebookEntry {
    std::string cell_id;
    std::uint8_t length = 0;
    std::uint64_t code = 0; // canonical value, MSB-first within `length` bits
};

struct Codebook {
    std::vector<CodebookEntry> entries;               // canonical order
    std::map<std::string, std::string> cell_of_atom;  // atom id -> cell id
    std::map<std::string, std::string> representative; // cell id -> atom id

    double kraft_sum() const;
};

// Huffman code lengths from cell masses (zero-mass cells carry no code),
// canonical assignment sorted by (length, cell id), representative = lowest
// atom id of each cell. Requires a valid partition with at least one cell
// of positive mass.
Codebook build_codebook(const GroundSpace& space, const Partition& p);

// Concatenated codewords for each atom's cell, with the layout above.
// An atom outside every coded cell raises a data error naming it and its
// position.
std::vector<std::uint8_t> encode(const GroundSpace& space, const Codebook& book,
                                 const std::vector<std::string>& atom_ids);

// Cell ids recovered from a stream, using only the embedded code table.
std::vector<std::string> decode_cells(const std::vector<std::uint8_t>& stream);

struct DecodedSymbol {
    std::string cell_id;
    std::string representative_atom_id;
};

// Full decode against a codebook built from the same partition; the embedded
// table must match the codebook exactly.
std::vector<DecodedSymbol> decode(const std::vector<std::uint8_t>& stream, const Codebook& book);

// Expected code length sum(mass_i * length_i) under the measure normalized
// to total mass 1. Meaningful only for positive total mass.
double expected_code_length(const GroundSpace& space, const Partition& p, const Codebook& book);

} // namespace cvq
