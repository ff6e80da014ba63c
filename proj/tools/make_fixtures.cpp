// Writes the bundled synthetic fixtures and their ground-truth masks.
//
//   make_fixtures [OUTPUT_DIR] [SEED]

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "psseg/fixtures.hpp"
#include "psseg/image_io.hpp"

namespace {

psseg::ScalarField mask_image(const psseg::BinaryMask& mask) {
    psseg::ScalarField out(mask.width, mask.height);
    for (std::size_t i = 0; i < mask.values.size(); ++i) out[i] = mask.values[i] ? 255.0 : 0.0;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const std::filesystem::path dir = argc > 1 ? argv[1] : "data";
    const auto seed = argc > 2 ? static_cast<std::uint32_t>(std::strtoul(argv[2], nullptr, 10))
                               : psseg::fixtures::kDefaultSeed;
    try {
        std::filesystem::create_directories(dir);
        const auto two = psseg::fixtures::two_region(seed);
        const auto lit = psseg::fixtures::illuminated(seed);
        psseg::save_image(two.image, (dir / "two_region.pgm").string());
        psseg::save_image(lit.image, (dir / "illuminated.pgm").string());
        psseg::save_image(mask_image(two.truth), (dir / "ellipse_truth.pgm").string());
        psseg::save_image(psseg::fixtures::smooth_random(seed), (dir / "smooth_random.pgm").string());
    } catch (const std::exception& e) {
        std::cerr << "make_fixtures: " << e.what() << '\n';
        return 1;
    }
    std::cout << "fixtures written to " << dir.string() << '\n';
    return 0;
}
