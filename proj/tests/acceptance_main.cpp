// Acceptance suite runner: one pass/fail line per criterion, nonzero exit on
// any failure. Also used through the CLI's --selftest flag.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "charsub/selftest.hpp"

int main(int argc, char** argv) {
    charsub::SelftestOptions opt;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
            opt.seed = std::strtoull(argv[++i], nullptr, 10);
        else if (std::strcmp(argv[i], "--workers") == 0 && i + 1 < argc)
            opt.workers = static_cast<unsigned>(std::strtoul(argv[++i], nullptr, 10));
    }

    std::printf("acceptance suite: seed %llu, %u workers\n",
                static_cast<unsigned long long>(opt.seed), opt.workers);
    auto results = charsub::selftest::run_acceptance(opt);
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s  criterion %2d  %-55s  %s  [%.1fs]\n", r.passed ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str(), r.seconds);
        all = all && r.passed;
    }
    std::printf("%s\n", all ? "ALL CRITERIA PASSED" : "ACCEPTANCE FAILED");
    return all ? 0 : 1;
}
