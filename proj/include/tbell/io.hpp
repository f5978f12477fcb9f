#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tbell/core.hpp"
#include "tbell/engine.hpp"
#include "tbell/search.hpp"

namespace tbell::io {

nlohmann::json triple_to_json(const SettingTriple& triple);
SettingTriple triple_from_json(const nlohmann::json& j);

nlohmann::json record_to_json(const ThrowRecord& r);
ThrowRecord record_from_json(const nlohmann::json& j, std::size_t line_number);

struct RecordFile {
    std::optional<nlohmann::json> meta;  // the header object when present
    std::vector<ThrowRecord> records;

    /// Setting triple from the meta line, when one is recorded.
    std::optional<SettingTriple> triple() const;
};

/// JSONL: one optional {"meta": ...} line, then one record per line.
/// Records round-trip bit-exactly (all fields are integers or enum names).
void write_records(std::ostream& out, const nlohmann::json& meta,
                   std::span<const ThrowRecord> records);
void write_records_file(const std::filesystem::path& path, const nlohmann::json& meta,
                        std::span<const ThrowRecord> records);
RecordFile read_records(std::istream& in);
RecordFile read_records_file(const std::filesystem::path& path);

/// Full analysis report: tally, per-pair correlators, the 12
/// probability-form margins, the correlator form, the 1964 reference form,
/// noise diagnostics, the symmetrized form, and the delta feasibility
/// verdict.
nlohmann::json build_report(const RecordFile& file);

nlohmann::json inequality_to_json(const analysis::InequalityReport& report);
nlohmann::json search_result_to_json(const search::SearchResult& result);
nlohmann::json sweep_to_json(std::span<const search::SweepRow> rows);
std::string sweep_to_csv(std::span<const search::SweepRow> rows);

}  // namespace tbell::io
