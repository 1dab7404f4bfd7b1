#include <iostream>

#include "gbc/acceptance.hpp"

int main() {
    const int failures = gbc::run_acceptance(std::cout);
    if (failures) std::cout << failures << " criteria failed\n";
    return failures ? 1 : 0;
}
