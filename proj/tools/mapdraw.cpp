#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include "mapdraw/pipeline.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    mapdraw::DrawSpec spec;
    try {
        spec = mapdraw::parse_options(args);
    } catch (const mapdraw::OptionError& e) {
        std::string what = e.what();
        std::cerr << what << "\n";
        if (what.find("usage:") == std::string::npos) std::cerr << mapdraw::usage_text();
        return 2;
    }

    std::vector<std::uint8_t> input{std::istreambuf_iterator<char>(std::cin),
                                    std::istreambuf_iterator<char>()};
    mapdraw::StreamResult res = mapdraw::run_stream(input, spec, std::cout, std::cerr);
    return res.ok() ? 0 : 1;
}
