#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dqa/errors.hpp"

namespace dqa {

struct FixtureRange {
    double min = 0.0, max = 0.0, mean = 0.0;
};

struct FixtureRegressionRow {
    std::string name;
    double b = 0.0, std_error = 0.0, t = 0.0, sig = 0.0;
    std::optional<double> beta;
};

struct FixtureSystemStats {
    std::string name;
    size_t projects = 0;
    FixtureRange modifiability, flexibility, testability;
    double corr_testability_modifiability = 0.0;
    double corr_testability_flexibility = 0.0;
    double corr_modifiability_flexibility = 0.0;
};

struct FixtureRankingRow {
    std::string id;
    double computed = 0.0, known = 0.0;
    double computed_rank = 0.0, known_rank = 0.0;
    double d_squared = 0.0, r_s = 0.0;
};

struct FixtureTTestCell {
    double r = 0.0, t = 0.0, critical = 0.0;
    bool reject = false;
};

struct FixtureTTestSystem {
    std::string name;
    size_t n = 0;
    FixtureTTestCell modifiability, flexibility;
};

/// Verbatim transcription of the published validation tables.
struct PaperFixtures {
    std::vector<FixtureRegressionRow> table1;
    double t2_r = 0.0, t2_r_square = 0.0, t2_adjusted_r_square = 0.0, t2_see = 0.0;
    size_t t2_n = 0, t2_k = 0;

    std::vector<FixtureSystemStats> table3;
    struct SummaryDiscrepancy {
        std::string system, cell;
        double summary_value = 0.0, primary_value = 0.0;
        std::string note;
    };
    std::vector<SummaryDiscrepancy> table3_discrepancies;

    size_t t4_n = 0;
    double t4_threshold = 0.0;
    std::vector<FixtureRankingRow> table4;

    double t5_alpha = 0.0;
    std::vector<FixtureTTestSystem> table5;
};

uint64_t fnv1a64(const std::string& bytes);

// The committed fixture file's checksum; the loader refuses any edit.
extern const uint64_t kFixtureChecksum;

// Throws FixtureCorruptionError on checksum mismatch, FileNotFoundError,
// MalformedDocumentError. Set verify_checksum = false only in tests that
// deliberately load synthetic fixture documents.
PaperFixtures load_fixtures(const std::string& path, bool verify_checksum = true);

struct ReplicationCheck {
    std::string id;
    double expected = 0.0;
    double computed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct ReplicationReport {
    std::vector<ReplicationCheck> checks;

    bool overall_pass() const;
    void append(const ReplicationReport& other);
    std::string to_text() const;
    std::string to_csv() const;
};

// Reconstructed system membership over the ranking-table projects. The published
// per-system statistics are reproduced only by this assignment; two projects
// belong to no system.
const std::map<std::string, std::vector<std::string>>& system_groups();
const std::vector<std::string>& orphan_projects();

ReplicationReport replicate_table1_2(const PaperFixtures& f);
ReplicationReport replicate_table3_means(const PaperFixtures& f);
ReplicationReport replicate_table4(const PaperFixtures& f);
ReplicationReport replicate_table5(const PaperFixtures& f);
ReplicationReport replicate_all(const PaperFixtures& f);

}  // namespace dqa
