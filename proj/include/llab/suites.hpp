#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace llab {

struct SuiteCheck {
    std::string name;
    bool passed = false;
    long total = 0;      // instances exercised
    long failures = 0;   // violations observed
    double worst = 0.0;  // worst margin / largest discrepancy
};

struct SuiteReport {
    std::string suite;
    std::vector<SuiteCheck> checks;
    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

// Randomized/matrix suites (seeded, deterministic).
SuiteReport suite_weyl(std::uint64_t seed, int instances = 1000);
SuiteReport suite_chebyshev(std::uint64_t seed, int instances = 1000);
SuiteReport suite_pushnitski(std::uint64_t seed, int instances = 1000);
SuiteReport suite_counting(std::uint64_t seed, int instances = 200);
SuiteReport suite_m6m7();
SuiteReport suite_identities();
SuiteReport suite_l3(std::uint64_t seed, int instances = 500);
SuiteReport suite_finv(std::uint64_t seed, int instances = 200);
SuiteReport suite_phi1();
SuiteReport suite_ladder();
// Deep-oracle ratio tables (centered disk, b=2, r=1): trend and factor checks.
// When `table_csv_path` is non-empty the table is written with columns
// lambda_log, n_plus (or tr_arctan), phi_half (or phi_quarter), ratio.
SuiteReport suite_msf1(const std::string& table_csv_path = "");
SuiteReport suite_msf2(const std::string& table_csv_path = "");

std::vector<std::string> known_suites();
SuiteReport run_suite(const std::string& name, std::uint64_t seed);

}  // namespace llab
