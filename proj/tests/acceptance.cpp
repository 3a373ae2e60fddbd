// Runs the numbered acceptance checks and prints one line per check.
// Usage: acceptance [id ...]   (all checks when no id is given)

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "twobody/acceptance.hpp"

int main(int argc, char** argv) {
    namespace ac = twobody::acceptance;
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        ids.push_back(std::atoi(argv[i]));
    }
    if (ids.empty()) {
        for (const auto& c : ac::criteria()) {
            ids.push_back(c.id);
        }
    }
    bool all = true;
    for (int id : ids) {
        const auto r = ac::run_criterion(id);
        std::printf("%s\n", ac::format_result(r).c_str());
        std::fflush(stdout);
        all = all && r.passed;
    }
    return all ? 0 : 1;
}
