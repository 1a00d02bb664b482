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

#include "cvq/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cvq {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::Validation, "cannot open '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        raise(ErrorKind::Validation, "cannot parse '" + path + "': " + e.what());
    }
    return doc;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) raise(ErrorKind::Validation, "cannot open '" + path + "' for writing");
    out << text;
    if (!out) raise(ErrorKind::Validation, "failed writing '" + path + "'");
}

// A set given either by explicit atom ids or as a closed label interval.
MSet parse_set(const GroundSpace& space, const json& entry, const char* what) {
    if (!entry.contains("id") || !entry["id"].is_string())
        raise(ErrorKind::Validation, std::string(what) + " entry without a string id");
    const std::string id = entry["id"].get<std::string>();

    if (entry.contains("atoms")) {
        std::vector<std::string> ids;
        for (const json& a : entry["atoms"]) {
            if (!a.is_string())
                raise(ErrorKind::Validation, std::string(what) + " '" + id + "' lists a non-string atom");
            ids.push_back(a.get<std::string>());
        }
        return space.make_set(id, ids);
    }

    if (entry.contains("lo") && entry.contains("hi")) {
        const double lo = entry["lo"].get<double>();
        const double hi = entry["hi"].get<double>();
        MSet s;
        s.id = id;
        for (std::uint32_t i = 0; i < space.size(); ++i) {
            const auto& atom = space.atoms()[i];
            if (!atom.label)
                raise(ErrorKind::Structural,
                      "interval-form set '" + id + "' needs labels, atom '" + atom.id + "' has none");
            if (*atom.label >= lo && *atom.label <= hi) s.atoms.push_back(i);
        }
        return s;
    }

    raise(ErrorKind::Validation,
          std::string(what) + " '" + id + "' needs either \"atoms\" or \"lo\"/\"hi\"");
}

json set_to_json(const GroundSpace& space, const MSet& s) {
    json entry;
    entry["id"] = s.id;
    json atoms = json::array();
    for (std::uint32_t idx : s.atoms) atoms.push_back(space.atoms()[idx].id);
    entry["atoms"] = std::move(atoms);
    return entry;
}

void require_unique_ids(const std::vector<MSet>& sets, const char* what) {
    std::set<std::string> seen;
    for (const MSet& s : sets)
        if (!seen.insert(s.id).second)
            raise(ErrorKind::Validation, std::string("duplicate ") + what + " id '" + s.id + "'");
}

} // namespace

GroundSpace load_measure(const std::string& path) {
    json doc = parse_file(path);
    if (!doc.contains("atoms") || !doc["atoms"].is_array())
        raise(ErrorKind::Validation, "measure file lacks an \"atoms\" array");

    std::vector<Atom> atoms;
    for (const json& entry : doc["atoms"]) {
        Atom a;
        if (!entry.contains("id") || !entry["id"].is_string())
            raise(ErrorKind::Validation, "atom entry without a string id");
        a.id = entry["id"].get<std::string>();
        if (!entry.contains("weight") || !entry["weight"].is_number())
            raise(ErrorKind::Validation, "atom '" + a.id + "' without a numeric weight");
        a.weight = entry["weight"].get<double>();
        if (entry.contains("label")) a.label = entry["label"].get<double>();
        atoms.push_back(std::move(a));
    }

    GroundSpace space(std::move(atoms));
    Diagnostics diag = validate(space);
    if (!diag.ok())
        raise(ErrorKind::Validation, "invalid measure: " + diag.joined());
    return space;
}

void save_measure(const GroundSpace& space, const std::string& path) {
    json doc;
    json atoms = json::array();
    for (const Atom& a : space.atoms()) {
        json entry;
        entry["id"] = a.id;
        entry["weight"] = a.weight;
        if (a.label) entry["label"] = *a.label;
        atoms.push_back(std::move(entry));
    }
    doc["atoms"] = std::move(atoms);
    write_file(path, doc.dump(2) + "\n");
}

Cover load_cover(const GroundSpace& space, const std::string& path) {
    json doc = parse_file(path);
    if (!doc.contains("sets") || !doc["sets"].is_array())
        raise(ErrorKind::Validation, "cover file lacks a \"sets\" array");
    Cover q;
    for (const json& entry : doc["sets"]) q.sets.push_back(parse_set(space, entry, "cover set"));
    require_unique_ids(q.sets, "cover set");
    return q;
}

void save_cover(const GroundSpace& space, const Cover& q, const std::string& path) {
    json doc;
    json sets = json::array();
    for (const MSet& s : q.sets) sets.push_back(set_to_json(space, s));
    doc["sets"] = std::move(sets);
    write_file(path, doc.dump(2) + "\n");
}

Partition load_partition(const GroundSpace& space, const std::string& path) {
    json doc = parse_file(path);
    if (!doc.contains("cells") || !doc["cells"].is_array())
        raise(ErrorKind::Validation, "partition file lacks a \"cells\" array");
    Partition p;
    for (const json& entry : doc["cells"]) p.cells.push_back(parse_set(space, entry, "cell"));
    require_unique_ids(p.cells, "cell");
    if (doc.contains("witness")) {
        for (auto it = doc["witness"].begin(); it != doc["witness"].end(); ++it)
            p.witness[it.key()] = it.value().get<std::string>();
    }
    return p;
}

void save_partition(const GroundSpace& space, const Partition& p, const std::string& path) {
    json doc;
    json cells = json::array();
    for (const MSet& cell : p.cells) cells.push_back(set_to_json(space, cell));
    doc["cells"] = std::move(cells);
    if (!p.witness.empty()) {
        json w;
        for (const auto& [cell, cover_set] : p.witness) w[cell] = cover_set;
        doc["witness"] = std::move(w);
    }
    write_file(path, doc.dump(2) + "\n");
}

DensitySpec load_density(const std::string& path) {
    json doc = parse_file(path);
    if (!doc.contains("pieces") || !doc["pieces"].is_array())
        raise(ErrorKind::Validation, "density file lacks a \"pieces\" array");
    DensitySpec d;
    for (const json& entry : doc["pieces"]) {
        DensityPiece piece;
        piece.lo = entry.at("lo").get<double>();
        piece.hi = entry.at("hi").get<double>();
        piece.height = entry.at("height").get<double>();
        d.pieces.push_back(piece);
    }
    return d;
}

std::string solve_result_json(const Cover& q, const SolveResult& result) {
    json doc;
    doc["entropy_bits"] = result.entropy_bits;
    json ordering = json::array();
    for (std::size_t idx : result.ordering) ordering.push_back(q.sets.at(idx).id);
    doc["ordering"] = std::move(ordering);
    doc["method"] = solve_method_name(result.method);
    doc["optimal"] = result.optimal;
    doc["nodes"] = result.nodes_explored;
    return doc.dump();
}

std::string trace_json(const ReductionTrace& trace) {
    json doc;
    json steps = json::array();
    for (const TraceStep& s : trace.steps) {
        json step;
        step["iteration"] = s.iteration;
        step["pmax_cell_id"] = s.pmax_cell_id;
        step["pmax_mass"] = s.pmax_mass;
        step["chosen_cover_index"] = s.chosen_cover_index;
        step["residual_mass_before"] = s.residual_mass_before;
        steps.push_back(std::move(step));
    }
    doc["steps"] = std::move(steps);
    doc["final_residual"] = trace.final_residual;
    return doc.dump(2) + "\n";
}

void save_text(const std::string& text, const std::string& path) {
    write_file(path, text);
}

std::vector<std::string> load_atom_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::Validation, "cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line))
        raise(ErrorKind::Validation, "empty data file '" + path + "'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "atom_id")
        raise(ErrorKind::Validation, "data file '" + path + "' must start with header 'atom_id'");
    std::vector<std::string> ids;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ids.push_back(line);
    }
    return ids;
}

} // namespace cvq
