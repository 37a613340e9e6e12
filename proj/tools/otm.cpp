#include <iostream>

#include "otm/cli.hpp"

int main(int argc, char** argv) {
    return otm::dispatch({argv + 1, argv + argc}, std::cout, std::cerr);
}
