#pragma once

// Brute-force subset search: which project subsets of the ranking table
// reproduce a published (count, min, max, mean) descriptive row.

#include <cmath>
#include <string>
#include <vector>

#include "dqa/replication.hpp"

namespace dqa::testoracle {

struct GroupMatch {
    std::vector<std::string> ids;
};

// Enumerates all subsets of the given size and keeps those whose min, max and
// mean each fall within tol of the targets.
inline std::vector<GroupMatch> matching_subsets(const std::vector<FixtureRankingRow>& rows,
                                                size_t size, double target_min, double target_max,
                                                double target_mean, double tol) {
    std::vector<GroupMatch> matches;
    std::vector<size_t> pick(size);

    auto evaluate = [&]() {
        double lo = rows[pick[0]].computed, hi = lo, sum = 0.0;
        for (size_t idx : pick) {
            const double v = rows[idx].computed;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
        }
        if (std::abs(lo - target_min) > tol) return;
        if (std::abs(hi - target_max) > tol) return;
        if (std::abs(sum / static_cast<double>(size) - target_mean) > tol) return;
        GroupMatch m;
        for (size_t idx : pick) m.ids.push_back(rows[idx].id);
        matches.push_back(std::move(m));
    };

    // Plain combinations; at ranking-table scale this is at most C(23,7).
    const size_t n = rows.size();
    auto recurse = [&](auto&& self, size_t depth, size_t start) -> void {
        if (depth == size) {
            evaluate();
            return;
        }
        for (size_t i = start; i + (size - depth) <= n; ++i) {
            pick[depth] = i;
            self(self, depth + 1, i + 1);
        }
    };
    recurse(recurse, 0, 0);
    return matches;
}

}  // namespace dqa::testoracle
