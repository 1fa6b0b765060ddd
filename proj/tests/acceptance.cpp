// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <cstring>
#include <iostream>

#include "equitor/acceptance.hpp"

int main(int argc, char** argv) {
    bool verbose = argc > 1 && std::strcmp(argv[1], "-v") == 0;
    int failed = 0;
    for (int id : equitor::acceptance_ids()) {
        auto r = equitor::run_criterion(id);
        std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name << ") " << r.seconds
                  << " s\n";
        for (auto& d : r.details)
            if (verbose || d.rfind("FAIL", 0) == 0) std::cout << "    " << d << "\n";
        failed += !r.passed;
    }
    std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criteria failed" : "acceptance: all passed")
              << std::endl;
    return failed ? 1 : 0;
}
