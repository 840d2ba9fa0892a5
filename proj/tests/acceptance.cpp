// Acceptance suite: one line and one exit status per criterion.
#include <algorithm>
#include <cstdio>
#include <vector>

#include "spinphase/checks.hpp"

int main() {
    const std::vector<spinphase::CheckResult> results = spinphase::run_verification({});
    bool all_pass = true;
    for (const spinphase::CheckResult& r : results) {
        std::printf("[%s] %-38s max=%.3e  thr=%.1e\n", r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.max_distance, r.threshold);
        if (!r.detail.empty()) std::printf("       %s\n", r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    std::printf("%zu/%zu criteria passed\n",
                static_cast<size_t>(std::count_if(results.begin(), results.end(),
                                                  [](const auto& r) { return r.pass; })),
                results.size());
    return all_pass ? 0 : 1;
}
