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

#include "cvq/codec.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace cvq {

namespace {

constexpr char kMagic[4] = {'C', 'V', 'Q', '1'};
constexpr int kMaxCodeLength = 64;

struct HuffNode {
    double weight;
    std::string key;  // smallest cell id in the subtree; tie-break order
    int left = -1;
    int right = -1;
    int cell = -1;    // leaf: index into the positive-cell list
};

struct NodeOrder {
    const std::vector<HuffNode>* nodes;
    // priority_queue keeps the *largest* on top, so invert.
    bool operator()(int a, int b) const {
        const HuffNode& na = (*nodes)[static_cast<std::size_t>(a)];
        const HuffNode& nb = (*nodes)[static_cast<std::size_t>(b)];
        if (na.weight != nb.weight) return na.weight > nb.weight;
        return na.key > nb.key;
    }
};

void assign_depths(const std::vector<HuffNode>& nodes, int node, int depth,
                   std::vector<int>& depths) {
    const HuffNode& n = nodes[static_cast<std::size_t>(node)];
    if (n.cell >= 0) {
        depths[static_cast<std::size_t>(n.cell)] = depth;
        return;
    }
    assign_depths(nodes, n.left, depth + 1, depths);
    assign_depths(nodes, n.right, depth + 1, depths);
}

class BitWriter {
public:
    void put(std::uint64_t code, int length) {
        for (int b = length - 1; b >= 0; --b) {
            cur_ = static_cast<std::uint8_t>((cur_ << 1) | ((code >> b) & 1u));
            if (++filled_ == 8) {
                bytes_.push_back(cur_);
                cur_ = 0;
                filled_ = 0;
            }
        }
        bits_ += static_cast<std::uint64_t>(length);
    }

    std::uint64_t bit_count() const { return bits_; }

    std::uint8_t padding() const {
        return static_cast<std::uint8_t>((8 - bits_ % 8) % 8);
    }

    std::vector<std::uint8_t> finish() {
        if (filled_ > 0) {
            bytes_.push_back(static_cast<std::uint8_t>(cur_ << (8 - filled_)));
            cur_ = 0;
            filled_ = 0;
        }
        return std::move(bytes_);
    }

private:
    std::vector<std::uint8_t> bytes_;
    std::uint64_t bits_ = 0;
    std::uint8_t cur_ = 0;
    int filled_ = 0;
};

class StreamReader {
public:
    explicit StreamReader(const std::vector<std::uint8_t>& data) : data_(data) {}

    std::uint8_t u8() {
        need(1);
        return data_[pos_++];
    }

    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>(data_[pos_] | (data_[pos_ + 1] << 8));
        pos_ += 2;
        return v;
    }

    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | data_[pos_ + static_cast<std::size_t>(i)];
        pos_ += 8;
        return v;
    }

    std::string bytes(std::size_t n) {
        need(n);
        std::string s(reinterpret_cast<const char*>(data_.data() + pos_), n);
        pos_ += n;
        return s;
    }

    std::size_t position() const { return pos_; }
    std::size_t remaining() const { return data_.size() - pos_; }

private:
    void need(std::size_t n) const {
        if (pos_ + n > data_.size())
            raise(ErrorKind::Format, "truncated stream");
    }

    const std::vector<std::uint8_t>& data_;
    std::size_t pos_ = 0;
};

// Canonical code assignment over entries already sorted by (length, id).
void assign_canonical_codes(std::vector<CodebookEntry>& entries) {
    std::uint64_t code = 0;
    int prev_len = 0;
    for (CodebookEntry& e : entries) {
        if (prev_len == 0) {
            code = 0;
        } else {
            code = (code + 1) << (e.length - prev_len);
        }
        e.code = code;
        prev_len = e.length;
    }
}

std::vector<std::pair<std::string, std::uint8_t>> read_code_table(StreamReader& in) {
    char magic[4];
    for (char& c : magic) c = static_cast<char>(in.u8());
    if (!std::equal(std::begin(magic), std::end(magic), std::begin(kMagic)))
        raise(ErrorKind::Format, "bad magic");

    const std::uint16_t count = in.u16();
    std::vector<std::pair<std::string, std::uint8_t>> table;
    table.reserve(count);
    for (std::uint16_t i = 0; i < count; ++i) {
        const std::uint8_t id_len = in.u8();
        std::string id = in.bytes(id_len);
        const std::uint8_t code_len = in.u8();
        if (code_len == 0 || code_len > kMaxCodeLength)
            raise(ErrorKind::Format, "code length " + std::to_string(code_len) + " out of range");
        table.emplace_back(std::move(id), code_len);
    }
    if (table.empty())
        raise(ErrorKind::Format, "empty code table");

    // Entries must arrive in canonical order.
    for (std::size_t i = 1; i < table.size(); ++i) {
        if (table[i - 1].second > table[i].second ||
            (table[i - 1].second == table[i].second && table[i - 1].first >= table[i].first))
            raise(ErrorKind::Format, "code table not in canonical order");
    }
    return table;
}

} // namespace

double Codebook::kraft_sum() const {
    double sum = 0.0;
    for (const CodebookEntry& e : entries) sum += std::ldexp(1.0, -static_cast<int>(e.length));
    return sum;
}

Codebook build_codebook(const GroundSpace& space, const Partition& p) {
    Diagnostics diag = is_partition(space, p);
    if (!diag.ok())
        raise(ErrorKind::Precondition, "invalid partition: " + diag.joined());

    struct PositiveCell {
        std::string id;
        double mass;
    };
    std::vector<PositiveCell> cells;
    Codebook book;

    for (const MSet& cell : p.cells) {
        const double m = mass(space, cell);
        if (m > 0.0) cells.push_back({cell.id, m});

        // representative = lowest atom id; atom->cell map for encoding
        std::string rep;
        for (std::uint32_t idx : cell.atoms) {
            const std::string& atom_id = space.atoms()[idx].id;
            if (m > 0.0) book.cell_of_atom[atom_id] = cell.id;
            if (rep.empty() || atom_id < rep) rep = atom_id;
        }
        if (m > 0.0 && !rep.empty()) book.representative[cell.id] = rep;
    }

    if (cells.empty())
        raise(ErrorKind::Precondition, "no cell of positive mass to code");

    std::vector<int> depths(cells.size(), 0);
    if (cells.size() == 1) {
        depths[0] = 1; // degenerate one-symbol stream stays self-delimiting
    } else {
        std::vector<HuffNode> nodes;
        nodes.reserve(2 * cells.size());
        std::priority_queue<int, std::vector<int>, NodeOrder> queue{NodeOrder{&nodes}};
        for (std::size_t i = 0; i < cells.size(); ++i) {
            nodes.push_back({cells[i].mass, cells[i].id, -1, -1, static_cast<int>(i)});
            queue.push(static_cast<int>(i));
        }
        while (queue.size() > 1) {
            const int a = queue.top(); queue.pop();
            const int b = queue.top(); queue.pop();
            HuffNode merged;
            merged.weight = nodes[static_cast<std::size_t>(a)].weight +
                            nodes[static_cast<std::size_t>(b)].weight;
            merged.key = std::min(nodes[static_cast<std::size_t>(a)].key,
                                  nodes[static_cast<std::size_t>(b)].key);
            merged.left = a;
            merged.right = b;
            nodes.push_back(merged);
            queue.push(static_cast<int>(nodes.size() - 1));
        }
        assign_depths(nodes, queue.top(), 0, depths);
    }

    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (depths[i] > kMaxCodeLength)
            raise(ErrorKind::Format, "code length " + std::to_string(depths[i]) +
                                     " exceeds the format limit of 64 bits");
        book.entries.push_back({cells[i].id, static_cast<std::uint8_t>(depths[i]), 0});
    }
    std::sort(book.entries.begin(), book.entries.end(),
              [](const CodebookEntry& a, const CodebookEntry& b) {
                  if (a.length != b.length) return a.length < b.length;
                  return a.cell_id < b.cell_id;
              });
    assign_canonical_codes(book.entries);
    return book;
}

std::vector<std::uint8_t> encode(const GroundSpace&, const Codebook& book,
                                 const std::vector<std::string>& atom_ids) {
    std::map<std::string, const CodebookEntry*> by_cell;
    for (const CodebookEntry& e : book.entries) by_cell[e.cell_id] = &e;

    BitWriter writer;
    for (std::size_t pos = 0; pos < atom_ids.size(); ++pos) {
        const std::string& atom = atom_ids[pos];
        auto cell_it = book.cell_of_atom.find(atom);
        if (cell_it == book.cell_of_atom.end())
            raise(ErrorKind::Data, "atom '" + atom + "' at position " + std::to_string(pos) +
                                   " belongs to no coded cell");
        const CodebookEntry* entry = by_cell.at(cell_it->second);
        writer.put(entry->code, entry->length);
    }

    const std::uint8_t padding = writer.padding();
    const std::uint64_t symbols = atom_ids.size();

    std::vector<std::uint8_t> out;
    out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
    if (book.entries.size() > 0xFFFF)
        raise(ErrorKind::Format, "too many cells for the stream format");
    const auto count = static_cast<std::uint16_t>(book.entries.size());
    out.push_back(static_cast<std::uint8_t>(count & 0xFF));
    out.push_back(static_cast<std::uint8_t>(count >> 8));
    for (const CodebookEntry& e : book.entries) {
        if (e.cell_id.size() > 0xFF)
            raise(ErrorKind::Format, "cell id '" + e.cell_id + "' too long for the stream format");
        out.push_back(static_cast<std::uint8_t>(e.cell_id.size()));
        out.insert(out.end(), e.cell_id.begin(), e.cell_id.end());
        out.push_back(e.length);
    }
    out.push_back(padding);
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<std::uint8_t>((symbols >> (8 * i)) & 0xFF));

    std::vector<std::uint8_t> payload = writer.finish();
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

std::vector<std::string> decode_cells(const std::vector<std::uint8_t>& stream) {
    StreamReader in(stream);
    auto table = read_code_table(in);

    const std::uint8_t padding = in.u8();
    if (padding >= 8)
        raise(ErrorKind::Format, "padding declaration " + std::to_string(padding) + " out of range");
    const std::uint64_t symbols = in.u64();

    std::vector<CodebookEntry> entries;
    entries.reserve(table.size());
    for (const auto& [id, len] : table) entries.push_back({id, len, 0});
    assign_canonical_codes(entries);

    std::vector<std::uint64_t> first_code(kMaxCodeLength + 1, 0);
    std::vector<std::uint64_t> counts(kMaxCodeLength + 1, 0);
    std::vector<std::size_t> base_index(kMaxCodeLength + 1, 0);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::size_t len = entries[i].length;
        if (counts[len] == 0) {
            first_code[len] = entries[i].code;
            base_index[len] = i;
        }
        counts[len] += 1;
    }

    const std::uint64_t payload_bits = 8 * static_cast<std::uint64_t>(in.remaining());
    if (payload_bits < padding)
        raise(ErrorKind::Format, "padding exceeds payload");
    const std::uint64_t data_bits = payload_bits - padding;
    const std::size_t payload_start = in.position();

    std::vector<std::string> out;
    out.reserve(symbols);
    std::uint64_t bit_pos = 0;
    for (std::uint64_t s = 0; s < symbols; ++s) {
        std::uint64_t value = 0;
        std::size_t len = 0;
        while (true) {
            if (bit_pos >= data_bits)
                raise(ErrorKind::Format, "codeword underflow at symbol " + std::to_string(s));
            const std::uint8_t byte = stream[payload_start + static_cast<std::size_t>(bit_pos / 8)];
            const std::uint64_t bit = (byte >> (7 - bit_pos % 8)) & 1u;
            value = (value << 1) | bit;
            bit_pos += 1;
            len += 1;
            if (len > static_cast<std::size_t>(kMaxCodeLength))
                raise(ErrorKind::Format, "codeword longer than the format limit");
            if (counts[len] > 0 && value >= first_code[len] &&
                value - first_code[len] < counts[len]) {
                out.push_back(entries[base_index[len] + static_cast<std::size_t>(value - first_code[len])].cell_id);
                break;
            }
        }
    }

    if (bit_pos != data_bits)
        raise(ErrorKind::Format, "payload length does not match the declared padding");
    return out;
}

std::vector<DecodedSymbol> decode(const std::vector<std::uint8_t>& stream, const Codebook& book) {
    // Verify the embedded table against the supplied codebook before use.
    StreamReader in(stream);
    auto table = read_code_table(in);
    if (table.size() != book.entries.size())
        raise(ErrorKind::Format, "embedded code table does not match the codebook");
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i].first != book.entries[i].cell_id || table[i].second != book.entries[i].length)
            raise(ErrorKind::Format, "embedded code table does not match the codebook");
    }

    std::vector<DecodedSymbol> out;
    for (std::string& cell : decode_cells(stream)) {
        DecodedSymbol sym;
        auto rep = book.representative.find(cell);
        sym.representative_atom_id = (rep == book.representative.end()) ? "" : rep->second;
        sym.cell_id = std::move(cell);
        out.push_back(std::move(sym));
    }
    return out;
}

double expected_code_length(const GroundSpace& space, const Partition& p, const Codebook& book) {
    const double total = space.total_mass();
    if (total <= 0.0)
        raise(ErrorKind::Precondition, "expected code length needs positive total mass");

    std::map<std::string, double> cell_mass;
    for (const MSet& cell : p.cells) cell_mass[cell.id] = mass(space, cell);

    double sum = 0.0;
    for (const CodebookEntry& e : book.entries)
        sum += (cell_mass.at(e.cell_id) / total) * static_cast<double>(e.length);
    return sum;
}

} // namespace cvq
