#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "gencyclo/predict.hpp"
#include "gencyclo/report.hpp"

namespace gencyclo {

struct SweepConfig {
    int64_t p_lo = 5, p_hi = 5;
    int64_t q_lo = 5, q_hi = 5;
    std::vector<uint32_t> l_set;
    std::optional<std::pair<int64_t, int64_t>> explicit_g;  // (g1, g2); smallest common g otherwise
    int64_t diag_cap = kFullScanCap;
    int jobs = 1;
    enum class Format { Jsonl, Csv } format = Format::Jsonl;
};

struct SweepTask {
    int64_t p, q;
    uint32_t l;
};

struct SweepSummary {
    int64_t records = 0;
    int64_t oracle_breaches = 0;
    std::map<std::string, int64_t> by_branch;
    std::map<std::string, int64_t> by_match;
    std::vector<std::string> skipped;  // human-readable skip reasons, in order
};

/// Admissible (p, q, l) triples in deterministic lexicographic order:
/// primes in range, p != q, gcd(p-1, q-1) = 4, gcd(l, n) = 1. Violations
/// of the l condition (and invalid explicit generators) are logged skips.
inline std::vector<SweepTask> enumerate_tasks(const SweepConfig& cfg, SweepSummary& summary) {
    std::vector<uint32_t> ls = cfg.l_set;
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    std::vector<SweepTask> tasks;
    for (int64_t p = std::max<int64_t>(3, cfg.p_lo); p <= cfg.p_hi; ++p) {
        if (!is_prime(p) || p % 2 == 0) continue;
        for (int64_t q = std::max<int64_t>(3, cfg.q_lo); q <= cfg.q_hi; ++q) {
            if (p == q || !is_prime(q) || q % 2 == 0) continue;
            if (std::gcd(p - 1, q - 1) != 4) continue;
            if (cfg.explicit_g) {
                auto [g1, g2] = *cfg.explicit_g;
                if (!is_primitive_root(g1 % p, p) || !is_primitive_root(g2 % q, q)) {
                    summary.skipped.push_back("(" + std::to_string(p) + "," + std::to_string(q) +
                                              "): explicit (g1,g2) not primitive roots");
                    continue;
                }
            }
            for (uint32_t l : ls) {
                if ((p * q) % l == 0) {
                    summary.skipped.push_back("(" + std::to_string(p) + "," + std::to_string(q) +
                                              ",l=" + std::to_string(l) + "): gcd(l,n) != 1");
                    continue;
                }
                tasks.push_back({p, q, l});
            }
        }
    }
    return tasks;
}

inline VerificationReport run_task(const SweepTask& t, const SweepConfig& cfg) {
    PrimePair pair = PrimePair::create(t.p, t.q);
    int64_t g1, g2;
    if (cfg.explicit_g) {
        g1 = cfg.explicit_g->first;
        g2 = cfg.explicit_g->second;
    } else {
        int64_t g = common_primitive_root(pair);
        g1 = g % pair.p;
        g2 = g % pair.q;
    }
    return verify(pair, g1, g2, t.l, cfg.diag_cap);
}

/// Runs the sweep, writing one record per triple to `out` in task order
/// regardless of worker completion order. Returns the summary.
inline SweepSummary run_sweep(const SweepConfig& cfg, std::ostream& out) {
    SweepSummary summary;
    std::vector<SweepTask> tasks = enumerate_tasks(cfg, summary);
    std::vector<VerificationReport> reports(tasks.size());
    int jobs = std::max(1, cfg.jobs);
    if (jobs == 1) {
        for (size_t i = 0; i < tasks.size(); ++i) reports[i] = run_task(tasks[i], cfg);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                reports[i] = run_task(tasks[i], cfg);
            }
        };
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (cfg.format == SweepConfig::Format::Csv) out << csv_header() << "\n";
    for (const auto& r : reports) {
        out << (cfg.format == SweepConfig::Format::Csv ? report_to_csv(r) : report_to_jsonl(r))
            << "\n";
        ++summary.records;
        ++summary.by_branch[branch_name(r.prediction.branch)];
        ++summary.by_match[r.match];
        if (!r.oracle_agreement) ++summary.oracle_breaches;
    }
    return summary;
}

inline void print_summary(const SweepSummary& s, std::ostream& os) {
    os << "records: " << s.records << "\n";
    os << "by branch:\n";
    for (const auto& [k, v] : s.by_branch) os << "  " << k << ": " << v << "\n";
    os << "by match:\n";
    for (const auto& [k, v] : s.by_match) os << "  " << k << ": " << v << "\n";
    if (!s.skipped.empty()) {
        os << "skipped (" << s.skipped.size() << "):\n";
        for (const auto& r : s.skipped) os << "  " << r << "\n";
    }
    if (s.oracle_breaches) os << "ORACLE DISAGREEMENTS: " << s.oracle_breaches << "\n";
}

}  // namespace gencyclo
