#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dqa/replication.hpp"
#include "subset_oracle.hpp"

using namespace dqa;

namespace {

const std::string kFixturePath = std::string(DQA_DATA_DIR) + "/paper_fixtures.json";

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("fixtures load and pass the checksum") {
    PaperFixtures f = load_fixtures(kFixturePath);
    CHECK(f.table1.size() == 3);
    CHECK(f.table3.size() == 4);
    CHECK(f.table4.size() == 23);
    CHECK(f.table5.size() == 4);
    CHECK(f.t4_threshold == 0.4815);
}

TEST_CASE("a corrupted fixture byte is refused") {
    std::string bytes = slurp(kFixturePath);
    const size_t pos = bytes.find("199.919");
    REQUIRE(pos != std::string::npos);
    bytes[pos] = '2';

    const std::string tmp = "corrupt_fixtures_test.json";
    {
        std::ofstream out(tmp, std::ios::binary);
        out << bytes;
    }
    CHECK_THROWS_AS(load_fixtures(tmp), FixtureCorruptionError);
    std::remove(tmp.c_str());
}

TEST_CASE("regression-table internal consistency replicates") {
    PaperFixtures f = load_fixtures(kFixturePath);
    ReplicationReport rep = replicate_table1_2(f);
    CHECK(rep.overall_pass());

    auto find = [&](const std::string& id) {
        auto it = std::find_if(rep.checks.begin(), rep.checks.end(),
                               [&](const ReplicationCheck& c) { return c.id == id; });
        REQUIRE(it != rep.checks.end());
        return *it;
    };
    CHECK(std::abs(find("table1.t.Modifiability").computed - 4.265) < 0.001);
    CHECK(std::abs(find("table1.sig.Flexibility").computed - 0.190) < 0.001);
    CHECK(std::abs(find("table2.adjusted_r_square").computed - 0.839) < 0.001);
}

TEST_CASE("system means replicate through the model") {
    PaperFixtures f = load_fixtures(kFixturePath);
    ReplicationReport rep = replicate_table3_means(f);
    CHECK(rep.overall_pass());

    bool found_orphans = false;
    for (const auto& c : rep.checks)
        if (c.id == "table3.orphan.p12") found_orphans = true;
    CHECK(found_orphans);
}

TEST_CASE("ranking table replicates") {
    PaperFixtures f = load_fixtures(kFixturePath);
    ReplicationReport rep = replicate_table4(f);
    CHECK(rep.overall_pass());
}

TEST_CASE("t-test tables replicate, including the lone accept") {
    PaperFixtures f = load_fixtures(kFixturePath);
    ReplicationReport rep = replicate_table5(f);
    CHECK(rep.overall_pass());

    auto it = std::find_if(rep.checks.begin(), rep.checks.end(), [](const ReplicationCheck& c) {
        return c.id == "table5.X.flexibility.decision";
    });
    REQUIRE(it != rep.checks.end());
    CHECK(it->expected == 0.0);  // accept
    CHECK(it->pass);
}

TEST_CASE("replication run is deterministic") {
    PaperFixtures f = load_fixtures(kFixturePath);
    CHECK(replicate_all(f).to_text() == replicate_all(f).to_text());
    CHECK(replicate_all(f).to_csv() == replicate_all(f).to_csv());
}

TEST_CASE("every fixture number is checked or explicitly recorded") {
    PaperFixtures f = load_fixtures(kFixturePath);
    ReplicationReport rep = replicate_all(f);
    size_t recorded = 0;
    for (const auto& c : rep.checks)
        if (c.note.rfind("recorded, not re-derivable", 0) == 0) ++recorded;
    // Table 1 SEs (3) + betas (2) + SEE (1) + per-system factor stats and
    // correlation leftovers (3 × 4) + discrepancy (1) + known values (23).
    CHECK(recorded == 3 + 2 + 1 + 12 + 1 + 23);
}

TEST_CASE("subset oracle confirms the documented group reconstruction") {
    PaperFixtures f = load_fixtures(kFixturePath);
    for (const auto& sys : f.table3) {
        auto matches = testoracle::matching_subsets(f.table4, sys.projects, sys.testability.min,
                                                    sys.testability.max, sys.testability.mean,
                                                    0.01);
        REQUIRE(matches.size() == 1);
        std::vector<std::string> ids = matches[0].ids;
        std::sort(ids.begin(), ids.end());
        std::vector<std::string> documented = system_groups().at(sys.name);
        std::sort(documented.begin(), documented.end());
        CHECK(ids == documented);
    }
}
