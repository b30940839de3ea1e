// Runs every acceptance criterion and prints one line per criterion.
#include <cstdio>

#include "horo/acceptance.hpp"

int main()
{
    int failed = 0;
    for (int id : horo::suite_criteria("all")) {
        const horo::CriterionResult r = horo::run_criterion(id);
        std::printf("%s\n", horo::format_result(r).c_str());
        std::fflush(stdout);
        failed += r.passed ? 0 : 1;
    }
    std::printf("%d of 10 criteria passed\n", 10 - failed);
    return failed == 0 ? 0 : 1;
}
