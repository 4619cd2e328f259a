// One line per acceptance criterion; nonzero exit if any fails.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "validation/acceptance.hpp"

int main(int argc, char** argv) {
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
    auto rs = tmsort::validation::run_acceptance(std::cout, only);
    int passed = 0;
    for (const auto& r : rs) passed += r.pass;
    std::cout << passed << "/" << rs.size() << " criteria passed" << std::endl;
    return tmsort::validation::all_passed(rs) ? 0 : 1;
}
