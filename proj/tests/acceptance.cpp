#include <iostream>

#include "hbsumma/selftest.hpp"

int main() {
    const auto results = hbsumma::selftest::run_all();
    const int failures = hbsumma::selftest::report(std::cout, results);
    return failures == 0 ? 0 : 1;
}
