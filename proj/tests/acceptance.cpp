// Acceptance runner: executes every criterion of the verification suite and
// prints one pass/fail line per criterion. Exit code 0 only if all pass.

#include <cstdlib>
#include <iostream>
#include <string>

#include "matchkit/verify.hpp"

int main(int argc, char** argv) {
    matchkit::VerifyOptions options;
    options.seed = 0;
    options.workers = 2;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--seed" && i + 1 < argc) options.seed = std::strtoull(argv[++i], nullptr, 10);
        if (arg == "--workers" && i + 1 < argc) options.workers = std::atoi(argv[++i]);
    }

    try {
        auto run = matchkit::run_acceptance(options);
        for (const auto& c : run.criteria) {
            std::cout << (c.pass ? "PASS" : "FAIL") << "  criterion " << c.id << "  [" << c.name
                      << "]  (" << c.elapsed_ms << " ms)\n";
        }
        std::cout << (run.all_pass ? "acceptance: all criteria passed"
                                   : "acceptance: FAILURES PRESENT")
                  << "\n";
        return run.all_pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "acceptance run aborted: " << e.what() << "\n";
        return 1;
    }
}
