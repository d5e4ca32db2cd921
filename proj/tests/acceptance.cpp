// One line per acceptance criterion.
//
// Exit status 0 iff the failing criteria are exactly those listed with
// --expect-red (comma-separated ids); without the flag, iff all pass.
#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>
#include <string_view>

#include "subindep/suite.hpp"

int main(int argc, char** argv) {
    std::set<int> expected_red;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string_view(argv[i]) != "--expect-red") continue;
        std::string list = argv[i + 1];
        for (std::size_t pos = 0; pos < list.size();) {
            const std::size_t comma = list.find(',', pos);
            expected_red.insert(std::atoi(list.substr(pos, comma - pos).c_str()));
            pos = comma == std::string::npos ? list.size() : comma + 1;
        }
    }

    std::set<int> red;
    for (int id = 1; id <= subindep::suite::kCriterionCount; ++id) {
        const auto r = subindep::suite::run_criterion(id);
        std::printf("criterion %d %s  %-62s %6.2fs  %s\n", r.id, r.passed ? "PASS" : "FAIL", r.title.c_str(),
                    r.seconds, r.detail.c_str());
        std::fflush(stdout);
        if (!r.passed) red.insert(id);
    }
    std::printf("%zu of %d criteria passed\n", subindep::suite::kCriterionCount - red.size(),
                subindep::suite::kCriterionCount);
    if (red != expected_red) {
        std::printf("failing set differs from the expected one\n");
        return 1;
    }
    return 0;
}
