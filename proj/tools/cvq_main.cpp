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

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvq/io.hpp"

namespace {

using namespace cvq;

enum class LogLevel { Quiet = 0, Info = 1, Trace = 2 };

LogLevel log_level() {
    const char* env = std::getenv("COVER_ENTROPY_LOG");
    if (!env) return LogLevel::Quiet;
    std::string v(env);
    if (v == "info") return LogLevel::Info;
    if (v == "trace") return LogLevel::Trace;
    return LogLevel::Quiet;
}

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::Info) std::cerr << msg << "\n";
}

void log_trace(const std::string& msg) {
    if (log_level() >= LogLevel::Trace) std::cerr << msg << "\n";
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Parameter:
        return 2;
    case ErrorKind::Internal:
        return 1;
    default:
        return 3; // bad measure/cover/partition/data/stream
    }
}

std::string format_number(double v) {
    std::ostringstream out;
    out << std::setprecision(12) << v;
    return out.str();
}

Partition require_valid_partition(const GroundSpace& space, const Partition& p) {
    Diagnostics diag = is_partition(space, p);
    if (!diag.ok()) raise(ErrorKind::Validation, "invalid partition: " + diag.joined());
    return p;
}

TiePolicy parse_policy(const std::string& name) {
    if (name == "max-gain") return TiePolicy::MaxGain;
    if (name == "first-index") return TiePolicy::FirstIndex;
    raise(ErrorKind::Parameter, "unknown policy '" + name + "'");
}

int cmd_entropy(const std::string& measure_path, const std::string& partition_path) {
    GroundSpace space = load_measure(measure_path);
    Partition p = require_valid_partition(space, load_partition(space, partition_path));
    EntropyValue h = partition_entropy(space, p);
    std::cout << format_number(h.bits) << "\n";
    return 0;
}

int cmd_reduce(const std::string& measure_path, const std::string& cover_path,
               const std::string& partition_path, const std::string& policy_name,
               const std::string& out_path, const std::string& trace_path) {
    GroundSpace space = load_measure(measure_path);
    Cover q = load_cover(space, cover_path);
    Partition p = load_partition(space, partition_path);
    const TiePolicy policy = parse_policy(policy_name);

    const double input_bits = partition_entropy(space, p).bits;
    ReductionResult result = reduce(space, q, p, policy);
    const double output_bits = cell_entropy_sum(space, result.partition.cells);

    for (const TraceStep& s : result.trace.steps) {
        std::ostringstream line;
        line << "step " << s.iteration << ": pmax=" << s.pmax_cell_id
             << " mass=" << s.pmax_mass << " cover_index=" << s.chosen_cover_index
             << " residual_before=" << s.residual_mass_before;
        log_trace(line.str());
    }
    log_info("reduced " + std::to_string(p.cells.size()) + " cells to " +
             std::to_string(result.partition.cells.size()) + " in " +
             std::to_string(result.trace.steps.size()) + " steps");

    if (!out_path.empty()) save_partition(space, result.partition, out_path);
    if (!trace_path.empty()) save_text(trace_json(result.trace), trace_path);

    nlohmann::json doc;
    doc["entropy_bits"] = output_bits;
    doc["input_entropy_bits"] = input_bits;
    nlohmann::json ordering = nlohmann::json::array();
    for (std::size_t idx : result.ordering) ordering.push_back(q.sets.at(idx).id);
    doc["ordering"] = std::move(ordering);
    doc["steps"] = result.trace.steps.size();
    std::cout << doc.dump() << "\n";
    return 0;
}

int cmd_solve(const std::string& measure_path, const std::string& cover_path,
              const std::string& method, std::uint64_t budget) {
    GroundSpace space = load_measure(measure_path);
    Cover q = load_cover(space, cover_path);

    std::string chosen = method;
    if (chosen == "auto") chosen = (q.size() <= 12) ? "exact" : "greedy";

    SolveResult result;
    if (chosen == "exact") {
        result = solve_exact(space, q, budget);
    } else if (chosen == "greedy") {
        result = solve_greedy(space, q);
    } else if (chosen == "oracle") {
        result = brute_force_oracle(space, q);
    } else {
        raise(ErrorKind::Parameter, "unknown method '" + method + "'");
    }

    log_info("solve method=" + std::string(solve_method_name(result.method)) +
             " nodes=" + std::to_string(result.nodes_explored));
    std::cout << solve_result_json(q, result) << "\n";
    if (chosen == "exact" && !result.optimal) return 4;
    return 0;
}

int cmd_encode(const std::string& measure_path, const std::string& partition_path,
               const std::string& data_path, const std::string& out_path) {
    GroundSpace space = load_measure(measure_path);
    Partition p = require_valid_partition(space, load_partition(space, partition_path));
    Codebook book = build_codebook(space, p);
    std::vector<std::string> atoms = load_atom_csv(data_path);
    std::vector<std::uint8_t> stream = encode(space, book, atoms);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) raise(ErrorKind::Validation, "cannot open '" + out_path + "' for writing");
    out.write(reinterpret_cast<const char*>(stream.data()),
              static_cast<std::streamsize>(stream.size()));
    if (!out) raise(ErrorKind::Validation, "failed writing '" + out_path + "'");

    std::uint64_t payload_bits = 0;
    {
        std::map<std::string, std::uint8_t> lengths;
        for (const CodebookEntry& e : book.entries) lengths[e.cell_id] = e.length;
        for (const std::string& atom : atoms)
            payload_bits += lengths.at(book.cell_of_atom.at(atom));
    }

    nlohmann::json doc;
    doc["symbols"] = atoms.size();
    doc["payload_bits"] = payload_bits;
    doc["stream_bytes"] = stream.size();
    std::cout << doc.dump() << "\n";
    return 0;
}

int cmd_decode(const std::string& in_path, const std::string& out_path,
               const std::string& measure_path, const std::string& partition_path) {
    std::ifstream in(in_path, std::ios::binary);
    if (!in) raise(ErrorKind::Validation, "cannot open '" + in_path + "'");
    std::vector<std::uint8_t> stream((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());

    GroundSpace space = load_measure(measure_path);
    Partition p = require_valid_partition(space, load_partition(space, partition_path));
    Codebook book = build_codebook(space, p);
    std::vector<DecodedSymbol> symbols = decode(stream, book);

    std::ostringstream csv;
    csv << "cell_id,representative_atom_id,representative_label\n";
    for (const DecodedSymbol& sym : symbols) {
        csv << sym.cell_id << "," << sym.representative_atom_id << ",";
        auto idx = space.find(sym.representative_atom_id);
        if (idx && space.atoms()[*idx].label)
            csv << std::setprecision(17) << *space.atoms()[*idx].label;
        csv << "\n";
    }
    save_text(csv.str(), out_path);

    nlohmann::json doc;
    doc["symbols"] = symbols.size();
    std::cout << doc.dump() << "\n";
    return 0;
}

int cmd_sweep(const std::string& density_path, double eps_start, double eps_end,
              std::uint32_t steps, const std::string& mode_name,
              std::uint32_t atoms_per_unit, const std::string& out_path) {
    if (!(eps_end > 0.0) || !(eps_start > 0.0))
        raise(ErrorKind::Parameter, "eps schedule must be positive");
    if (eps_start < eps_end)
        raise(ErrorKind::Parameter, "eps schedule must decrease: eps-start >= eps-end");
    if (steps < 1) raise(ErrorKind::Parameter, "steps must be >= 1");
    if (steps > 1 && eps_start == eps_end)
        raise(ErrorKind::Parameter, "eps schedule must strictly decrease over multiple steps");

    EpsMode mode;
    if (mode_name == "aligned") mode = EpsMode::Aligned;
    else if (mode_name == "sliding") mode = EpsMode::Sliding;
    else raise(ErrorKind::Parameter, "unknown mode '" + mode_name + "'");

    DensitySpec density = load_density(density_path);

    if (atoms_per_unit == 0) {
        // Finest window must hold at least 4 grid atoms; keep powers of two
        // so dyadic schedules stay exact.
        double needed = 4.0 / eps_end;
        double apu = 1.0;
        while (apu < needed) apu *= 2.0;
        if (apu > (1u << 24))
            raise(ErrorKind::Parameter, "eps-end needs an unreasonably fine grid; pass --atoms-per-unit");
        atoms_per_unit = static_cast<std::uint32_t>(apu);
    }
    if (eps_end * static_cast<double>(atoms_per_unit) < 2.0 - 1e-9)
        raise(ErrorKind::Validation,
              "grid too coarse: fewer than 2 atoms per window at eps-end; increase --atoms-per-unit");

    GroundSpace space = discretize(density, atoms_per_unit);

    std::ostringstream csv;
    csv << "eps,entropy_bits,method,cover_size\n";
    const double log_start = std::log2(eps_start);
    const double log_end = std::log2(eps_end);
    for (std::uint32_t i = 0; i < steps; ++i) {
        const double t = (steps == 1) ? 0.0
                                      : static_cast<double>(i) / static_cast<double>(steps - 1);
        const double eps = std::exp2(log_start + t * (log_end - log_start));
        Cover q = epsilon_cover(space, eps, mode);
        SolveResult result = (q.size() <= 12) ? solve_exact(space, q) : solve_greedy(space, q);
        log_info("sweep eps=" + format_number(eps) + " -> " + format_number(result.entropy_bits) +
                 " bits (" + solve_method_name(result.method) + ")");
        csv << std::setprecision(17) << eps << "," << std::setprecision(17)
            << result.entropy_bits << "," << solve_method_name(result.method) << ","
            << q.size() << "\n";
    }
    save_text(csv.str(), out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cover-entropy toolkit: quantizer design and coding over error-control covers"};
    app.require_subcommand(1);
    int rc = 0;

    // entropy
    auto* entropy_cmd = app.add_subcommand("entropy", "Entropy of a partition under a measure");
    std::string e_measure, e_partition;
    entropy_cmd->add_option("--measure", e_measure, "measure JSON")->required();
    entropy_cmd->add_option("--partition", e_partition, "partition JSON")->required();
    entropy_cmd->callback([&] { rc = cmd_entropy(e_measure, e_partition); });

    // reduce
    auto* reduce_cmd = app.add_subcommand("reduce", "Reduce an acceptable partition into ordering form");
    std::string r_measure, r_cover, r_partition, r_policy = "max-gain", r_out, r_trace;
    reduce_cmd->add_option("--measure", r_measure, "measure JSON")->required();
    reduce_cmd->add_option("--cover", r_cover, "cover JSON")->required();
    reduce_cmd->add_option("--partition", r_partition, "partition JSON")->required();
    reduce_cmd->add_option("--policy", r_policy, "max-gain|first-index");
    reduce_cmd->add_option("--out", r_out, "write the reduced partition JSON here");
    reduce_cmd->add_option("--trace", r_trace, "write the step trace JSON here");
    reduce_cmd->callback([&] { rc = cmd_reduce(r_measure, r_cover, r_partition, r_policy, r_out, r_trace); });

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Minimal entropy over a cover");
    std::string s_measure, s_cover, s_method = "auto";
    std::uint64_t s_budget = kDefaultNodeBudget;
    solve_cmd->add_option("--measure", s_measure, "measure JSON")->required();
    solve_cmd->add_option("--cover", s_cover, "cover JSON")->required();
    solve_cmd->add_option("--method", s_method, "greedy|exact|oracle (default: exact when small)");
    solve_cmd->add_option("--budget-nodes", s_budget, "node budget for exact search");
    solve_cmd->callback([&] { rc = cmd_solve(s_measure, s_cover, s_method, s_budget); });

    // encode
    auto* encode_cmd = app.add_subcommand("encode", "Encode atoms through a partition codebook");
    std::string en_measure, en_partition, en_data, en_out;
    encode_cmd->add_option("--measure", en_measure, "measure JSON")->required();
    encode_cmd->add_option("--partition", en_partition, "partition JSON")->required();
    encode_cmd->add_option("--data", en_data, "CSV of atom ids")->required();
    encode_cmd->add_option("--out", en_out, "output stream file")->required();
    encode_cmd->callback([&] { rc = cmd_encode(en_measure, en_partition, en_data, en_out); });

    // decode
    auto* decode_cmd = app.add_subcommand("decode", "Decode a stream to cell representatives");
    std::string de_in, de_out, de_measure, de_partition;
    decode_cmd->add_option("--in", de_in, "input stream file")->required();
    decode_cmd->add_option("--out", de_out, "output CSV")->required();
    decode_cmd->add_option("--measure", de_measure, "measure JSON")->required();
    decode_cmd->add_option("--partition", de_partition, "partition JSON")->required();
    decode_cmd->callback([&] { rc = cmd_decode(de_in, de_out, de_measure, de_partition); });

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Entropy against a shrinking eps schedule");
    std::string sw_density, sw_mode = "aligned", sw_out;
    double sw_start = 0.5, sw_end = 0.015625;
    std::uint32_t sw_steps = 6, sw_apu = 0;
    sweep_cmd->add_option("--density", sw_density, "density JSON")->required();
    sweep_cmd->add_option("--eps-start", sw_start, "largest eps")->required();
    sweep_cmd->add_option("--eps-end", sw_end, "smallest eps")->required();
    sweep_cmd->add_option("--steps", sw_steps, "number of rows")->required();
    sweep_cmd->add_option("--mode", sw_mode, "aligned|sliding");
    sweep_cmd->add_option("--atoms-per-unit", sw_apu, "grid resolution (default: derived from eps-end)");
    sweep_cmd->add_option("--out", sw_out, "output CSV")->required();
    sweep_cmd->callback([&] {
        rc = cmd_sweep(sw_density, sw_start, sw_end, sw_steps, sw_mode, sw_apu, sw_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << "error: usage: " << e.what() << "\n";
        return 2;
    } catch (const cvq::Error& e) {
        std::cerr << "error: " << e.category() << ": " << e.detail() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
