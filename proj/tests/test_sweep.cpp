#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "gencyclo/sweep.hpp"

using namespace gencyclo;

namespace {
SweepConfig base_config() {
    SweepConfig cfg;
    cfg.p_lo = 5;
    cfg.p_hi = 17;
    cfg.q_lo = 5;
    cfg.q_hi = 17;
    cfg.l_set = {2, 3};
    cfg.diag_cap = 0;
    return cfg;
}
}  // namespace

TEST_CASE("empty admissible set") {
    SweepConfig cfg;
    cfg.p_lo = cfg.p_hi = cfg.q_lo = cfg.q_hi = 7;
    cfg.l_set = {2};
    std::ostringstream out;
    auto s = run_sweep(cfg, out);
    CHECK(s.records == 0);
    CHECK(out.str().empty());
}

TEST_CASE("record count equals independent enumeration") {
    auto cfg = base_config();
    std::ostringstream out;
    auto s = run_sweep(cfg, out);
    int64_t expect = 0;
    for (int64_t p : {5, 7, 11, 13, 17})
        for (int64_t q : {5, 7, 11, 13, 17}) {
            if (p == q || std::gcd(p - 1, q - 1) != 4) continue;
            for (int64_t l : {2, 3})
                if ((p * q) % l != 0) ++expect;
        }
    CHECK(s.records == expect);
    // one line per record
    int64_t lines = 0;
    for (char c : out.str()) lines += c == '\n';
    CHECK(lines == s.records);
}

TEST_CASE("deterministic output, independent of job count") {
    auto cfg = base_config();
    std::ostringstream a, b, c;
    run_sweep(cfg, a);
    run_sweep(cfg, b);
    cfg.jobs = 2;
    run_sweep(cfg, c);
    CHECK(a.str() == b.str());
    CHECK(a.str() == c.str());
    CHECK_FALSE(a.str().empty());
}

TEST_CASE("gcd violations are skipped with a reason") {
    auto cfg = base_config();
    cfg.l_set = {2, 5};
    std::ostringstream out;
    auto s = run_sweep(cfg, out);
    bool saw = false;
    for (const auto& r : s.skipped) saw |= r.find("gcd(l,n) != 1") != std::string::npos;
    CHECK(saw);
}

TEST_CASE("l = 2 dichotomy: Cor15 on n = 1 (mod 8), Cor16 otherwise") {
    SweepConfig cfg;
    cfg.p_lo = 5;
    cfg.p_hi = 41;
    cfg.q_lo = 5;
    cfg.q_hi = 41;
    cfg.l_set = {2};
    cfg.diag_cap = 0;
    std::ostringstream out;
    run_sweep(cfg, out);
    std::istringstream in(out.str());
    std::string line;
    int64_t seen = 0;
    while (std::getline(in, line)) {
        auto j = nlohmann::json::parse(line);
        int64_t n = j["n"].get<int64_t>();
        std::string branch = j["branch"].get<std::string>();
        if (n % 8 == 1)
            CHECK(branch.rfind("Cor15", 0) == 0);
        else
            CHECK(branch == "Cor16");
        CHECK(j["match"] == "Exact");
        ++seen;
    }
    CHECK(seen > 0);
}

TEST_CASE("csv format writes the frozen header") {
    auto cfg = base_config();
    cfg.format = SweepConfig::Format::Csv;
    std::ostringstream out;
    run_sweep(cfg, out);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == csv_header());
}

TEST_CASE("explicit generators apply when valid and skip otherwise") {
    SweepConfig cfg;
    cfg.p_lo = cfg.p_hi = 5;
    cfg.q_lo = cfg.q_hi = 17;
    cfg.l_set = {2};
    cfg.diag_cap = 0;
    cfg.explicit_g = {{2, 3}};
    std::ostringstream out;
    auto s = run_sweep(cfg, out);
    CHECK(s.records == 1);
    auto j = nlohmann::json::parse(out.str());
    CHECK(j["g"] == 37);
    CHECK(j["computed_L"] == 69);

    cfg.explicit_g = {{2, 2}};  // 2 is not a primitive root mod 17
    std::ostringstream out2;
    auto s2 = run_sweep(cfg, out2);
    CHECK(s2.records == 0);
    REQUIRE(s2.skipped.size() == 1);
    CHECK(s2.skipped[0].find("not primitive roots") != std::string::npos);
}
