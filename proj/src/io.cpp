#include "tbell/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tbell/analysis.hpp"

namespace tbell::io {

using nlohmann::json;

namespace {

std::string outcome_pair_key(Outcome a, Outcome b) {
    std::string key;
    key += a == Outcome::Plus ? 'p' : 'm';
    key += b == Outcome::Plus ? 'p' : 'm';
    return key;
}

json direction_to_json(const Direction& d) { return json::array({d.x(), d.y(), d.z()}); }

Setting setting_from_json(const json& j, std::size_t line_number, const char* field) {
    if (!j.is_string() || j.get<std::string>().size() != 1) {
        throw ParseError(std::string(field) + " must be one of \"A\", \"B\", \"C\"", line_number);
    }
    try {
        return setting_from_char(j.get<std::string>()[0]);
    } catch (const InvalidConfigError& e) {
        throw ParseError(std::string(field) + ": " + e.what(), line_number);
    }
}

Outcome outcome_from_json(const json& j, std::size_t line_number, const char* field) {
    if (!j.is_number_integer()) {
        throw ParseError(std::string(field) + " must be the integer 1 or -1", line_number);
    }
    try {
        return outcome_from_int(j.get<int>());
    } catch (const InvalidConfigError& e) {
        throw ParseError(std::string(field) + ": " + e.what(), line_number);
    }
}

json correlator_to_json(Setting s1, Setting s2, const analysis::CorrelatorEstimate& e) {
    return json{{"first", std::string(1, to_char(s1))},
                {"second", std::string(1, to_char(s2))},
                {"value", e.value},
                {"stderr", e.stderr_value},
                {"n_pair", e.n_pair}};
}

}  // namespace

json triple_to_json(const SettingTriple& triple) {
    return json::array(
        {direction_to_json(triple.a), direction_to_json(triple.b), direction_to_json(triple.c)});
}

SettingTriple triple_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) {
        throw InvalidConfigError("triple must be an array of three 3-vectors");
    }
    std::array<Direction, 3> dirs{unit_vector(1, 0, 0), unit_vector(1, 0, 0),
                                  unit_vector(1, 0, 0)};
    for (std::size_t i = 0; i < 3; ++i) {
        const json& v = j[i];
        if (!v.is_array() || v.size() != 3) {
            throw InvalidConfigError("triple entries must be 3-vectors");
        }
        dirs[i] = unit_vector(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
    }
    return SettingTriple{dirs[0], dirs[1], dirs[2]};
}

json record_to_json(const ThrowRecord& r) {
    return json{{"throw_id", r.throw_id},
                {"first_setting", std::string(1, to_char(r.first_setting))},
                {"first_outcome", value(r.first_outcome)},
                {"second_setting", std::string(1, to_char(r.second_setting))},
                {"second_outcome", value(r.second_outcome)}};
}

ThrowRecord record_from_json(const json& j, std::size_t line_number) {
    if (!j.is_object()) throw ParseError("record must be a JSON object", line_number);
    for (const char* field :
         {"throw_id", "first_setting", "first_outcome", "second_setting", "second_outcome"}) {
        if (!j.contains(field)) {
            throw ParseError(std::string("record is missing \"") + field + "\"", line_number);
        }
    }
    if (!j["throw_id"].is_number_unsigned() && !j["throw_id"].is_number_integer()) {
        throw ParseError("throw_id must be a nonnegative integer", line_number);
    }
    if (j["throw_id"].is_number_integer() && j["throw_id"].get<std::int64_t>() < 0) {
        throw ParseError("throw_id must be a nonnegative integer", line_number);
    }
    ThrowRecord r;
    r.throw_id = j["throw_id"].get<std::uint64_t>();
    r.first_setting = setting_from_json(j["first_setting"], line_number, "first_setting");
    r.first_outcome = outcome_from_json(j["first_outcome"], line_number, "first_outcome");
    r.second_setting = setting_from_json(j["second_setting"], line_number, "second_setting");
    r.second_outcome = outcome_from_json(j["second_outcome"], line_number, "second_outcome");
    return r;
}

std::optional<SettingTriple> RecordFile::triple() const {
    if (!meta || !meta->contains("triple")) return std::nullopt;
    return triple_from_json((*meta)["triple"]);
}

void write_records(std::ostream& out, const json& meta, std::span<const ThrowRecord> records) {
    out << json{{"meta", meta}}.dump() << '\n';
    for (const ThrowRecord& r : records) out << record_to_json(r).dump() << '\n';
}

void write_records_file(const std::filesystem::path& path, const json& meta,
                        std::span<const ThrowRecord> records) {
    std::ofstream out(path, std::ios::binary);  // binary keeps line endings exact
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    write_records(out, meta, records);
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

RecordFile read_records(std::istream& in) {
    RecordFile file;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError(std::string("invalid JSON (") + e.what() + ")", line_number);
        }
        if (line_number == 1 && j.is_object() && j.contains("meta")) {
            file.meta = j["meta"];
            continue;
        }
        file.records.push_back(record_from_json(j, line_number));
    }
    return file;
}

RecordFile read_records_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return read_records(in);
}

json inequality_to_json(const analysis::InequalityReport& report) {
    return json{{"name", report.name},       {"lhs", report.lhs},
                {"bound", report.bound},     {"margin", report.margin},
                {"stderr_lhs", report.stderr_lhs}, {"z_score", report.z_score},
                {"violated", report.violated}};
}

json build_report(const RecordFile& file) {
    const analysis::Tally t = analysis::tally(file.records);
    const analysis::PairStats stats = analysis::from_tally(t);

    json tally_cells = json::array();
    for (Setting s1 : kAllSettings) {
        for (Setting s2 : kAllSettings) {
            json cell{{"first", std::string(1, to_char(s1))},
                      {"second", std::string(1, to_char(s2))}};
            for (Outcome a : kBothOutcomes) {
                for (Outcome b : kBothOutcomes) {
                    cell[outcome_pair_key(a, b)] = t.cell(s1, a, s2, b);
                }
            }
            tally_cells.push_back(std::move(cell));
        }
    }

    json correlators = json::array();
    for (Setting s1 : kAllSettings) {
        for (Setting s2 : kAllSettings) {
            correlators.push_back(
                correlator_to_json(s1, s2, analysis::correlator_estimate(stats, s1, s2)));
        }
    }

    json wigner = json::array();
    for (const auto& report : analysis::wigner_forms(stats)) {
        wigner.push_back(inequality_to_json(report));
    }

    const auto Eac = analysis::correlator_estimate(stats, Setting::A, Setting::C);
    const auto Ebc = analysis::correlator_estimate(stats, Setting::B, Setting::C);
    const auto Eab = analysis::correlator_estimate(stats, Setting::A, Setting::B);

    const analysis::NoiseDiagnostics diag = analysis::noise_diagnostics(stats);
    json diag_json{{"delta_max", diag.delta_max}};
    for (Setting s : kAllSettings) {
        diag_json["delta"][std::string(1, to_char(s))] = diag.delta[index(s)];
        diag_json["delta_stderr"][std::string(1, to_char(s))] = diag.delta_stderr[index(s)];
    }
    for (std::size_t k = 0; k < analysis::kUnorderedPairs.size(); ++k) {
        const auto [n, m] = analysis::kUnorderedPairs[k];
        const std::string key{to_char(n), to_char(m)};
        diag_json["antisym"][key] = diag.antisym[k];
        diag_json["antisym_stderr"][key] = diag.antisym_stderr[k];
        diag_json["sym"][key] = diag.sym[k];
        diag_json["sym_stderr"][key] = diag.sym_stderr[k];
    }

    json report{{"tally", json{{"total", t.total}, {"cells", std::move(tally_cells)}}},
                {"correlators", std::move(correlators)},
                {"wigner_forms", std::move(wigner)},
                {"correlator_form",
                 inequality_to_json(analysis::correlator_inequality(Eac, Ebc, Eab))},
                {"reference_bell_1964",
                 inequality_to_json(analysis::reference_bell_1964(Eab, Eac, Ebc))},
                {"noise_diagnostics", std::move(diag_json)},
                {"symmetrized_form",
                 inequality_to_json(analysis::symmetrized_inequality(stats))},
                {"delta_feasible", analysis::delta_feasibility(diag.delta_max)}};
    if (file.meta) report["meta"] = *file.meta;
    if (const auto triple = file.triple()) {
        report["geometric_lhs"] = analysis::geometric_lhs(*triple);
    }
    return report;
}

json search_result_to_json(const search::SearchResult& result) {
    return json{{"family", search::family_name(result.family)},
                {"triple", triple_to_json(result.triple)},
                {"objective", result.objective},
                {"iterations", result.iterations},
                {"converged", result.converged},
                {"max_evaluated", result.max_evaluated}};
}

json sweep_to_json(std::span<const search::SweepRow> rows) {
    json out = json::array();
    for (const auto& row : rows) {
        out.push_back(json{{"eta", row.eta},
                           {"delta_measured", row.delta_measured},
                           {"delta_stderr", row.delta_stderr},
                           {"lhs", row.lhs},
                           {"stderr_lhs", row.stderr_lhs},
                           {"violated", row.violated}});
    }
    return json{{"rows", std::move(out)}};
}

std::string sweep_to_csv(std::span<const search::SweepRow> rows) {
    std::ostringstream out;
    out << "eta,delta_measured,delta_stderr,lhs,stderr_lhs,violated\n";
    char buf[64];
    const auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << sep;
    };
    for (const auto& row : rows) {
        put(row.eta, ',');
        put(row.delta_measured, ',');
        put(row.delta_stderr, ',');
        put(row.lhs, ',');
        put(row.stderr_lhs, ',');
        out << (row.violated ? 1 : 0) << '\n';
    }
    return out.str();
}

}  // namespace tbell::io
