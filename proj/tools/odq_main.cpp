#include "odq/app.hpp"

int main(int argc, char** argv) {
    return odq::run_cli(argc, argv);
}
