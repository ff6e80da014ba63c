#include "psseg/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "psseg/errors.hpp"

namespace psseg {

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
    if (s.size() < suffix.size()) return false;
    return std::equal(suffix.rbegin(), suffix.rend(), s.rbegin(), [](char a, char b) {
        return std::tolower(static_cast<unsigned char>(a)) == b;
    });
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Cursor over a PNM header: whitespace-separated decimal tokens, '#'
// comments to end of line.
class PnmHeader {
public:
    PnmHeader(const std::vector<std::uint8_t>& bytes, const std::string& path)
        : bytes_(bytes), path_(path) {}

    std::size_t pos = 2;

    long next_int(const char* what) {
        skip_space_and_comments();
        if (pos >= bytes_.size() || !std::isdigit(bytes_[pos])) {
            throw FormatError(path_ + ": truncated or corrupt PGM header (missing " + what + ")");
        }
        long value = 0;
        while (pos < bytes_.size() && std::isdigit(bytes_[pos])) {
            value = value * 10 + (bytes_[pos] - '0');
            if (value > 1'000'000'000) throw FormatError(path_ + ": PGM " + what + " too large");
            ++pos;
        }
        return value;
    }

private:
    void skip_space_and_comments() {
        while (pos < bytes_.size()) {
            if (std::isspace(bytes_[pos])) {
                ++pos;
            } else if (bytes_[pos] == '#') {
                while (pos < bytes_.size() && bytes_[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    const std::vector<std::uint8_t>& bytes_;
    const std::string& path_;
};

ScalarField decode_pgm(const std::vector<std::uint8_t>& bytes, const std::string& path) {
    PnmHeader header(bytes, path);
    const long width = header.next_int("width");
    const long height = header.next_int("height");
    const long maxval = header.next_int("maxval");
    if (width <= 0 || height <= 0) throw FormatError(path + ": PGM has zero size");
    if (maxval <= 0 || maxval > 65535) {
        throw FormatError(path + ": PGM maxval " + std::to_string(maxval) + " out of range");
    }
    if (header.pos >= bytes.size() || !std::isspace(bytes[header.pos])) {
        throw FormatError(path + ": truncated PGM header");
    }
    std::size_t pos = header.pos + 1;

    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    const std::size_t sample_bytes = maxval < 256 ? 1 : 2;
    if (bytes.size() - pos < count * sample_bytes) {
        throw FormatError(path + ": truncated PGM pixel data (expected " +
                          std::to_string(count * sample_bytes) + " bytes, found " +
                          std::to_string(bytes.size() - pos) + ")");
    }

    ScalarField field(static_cast<int>(width), static_cast<int>(height));
    const double scale = 255.0 / static_cast<double>(maxval);
    for (std::size_t i = 0; i < count; ++i) {
        long v = bytes[pos];
        if (sample_bytes == 2) v = (v << 8) | bytes[pos + 1];
        pos += sample_bytes;
        if (v > maxval) throw FormatError(path + ": PGM sample exceeds maxval");
        field[i] = maxval == 255 ? static_cast<double>(v) : static_cast<double>(v) * scale;
    }
    return field;
}

struct PngImageGuard {
    png_image image;
    PngImageGuard() {
        std::memset(&image, 0, sizeof image);
        image.version = PNG_IMAGE_VERSION;
    }
    ~PngImageGuard() { png_image_free(&image); }
};

ScalarField decode_png(const std::vector<std::uint8_t>& bytes, const std::string& path) {
    PngImageGuard guard;
    png_image& image = guard.image;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
        throw FormatError(path + ": corrupt PNG (" + image.message + ")");
    }
    if (image.format & PNG_FORMAT_FLAG_ALPHA) {
        throw FormatError(path + ": PNG has an alpha channel; expected plain grayscale");
    }
    if (image.format & PNG_FORMAT_FLAG_LINEAR) {
        throw FormatError(path + ": 16-bit PNG is not supported; expected 8-bit grayscale");
    }
    const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    const bool palette = (image.format & PNG_FORMAT_FLAG_COLORMAP) != 0;
    if (color && !palette) {
        throw FormatError(path + ": color PNG; expected grayscale");
    }

    const int width = static_cast<int>(image.width);
    const int height = static_cast<int>(image.height);
    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
        throw FormatError(path + ": corrupt PNG data (" + image.message + ")");
    }

    ScalarField field(width, height);
    for (std::size_t i = 0; i < count; ++i) {
        if (color) {
            const std::uint8_t* p = &pixels[3 * i];
            if (p[0] != p[1] || p[1] != p[2]) {
                throw FormatError(path + ": palette PNG contains non-gray colors");
            }
            field[i] = p[0];
        } else {
            field[i] = pixels[i];
        }
    }
    return field;
}

std::uint8_t to_byte(double v) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
}

void write_bytes(const std::string& path, const std::string& header,
                 const std::vector<std::uint8_t>& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << header;
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError("write failed for " + path);
}

void write_png(const std::string& path, int width, int height, bool rgb,
               const std::vector<std::uint8_t>& data) {
    PngImageGuard guard;
    png_image& image = guard.image;
    image.width = static_cast<png_uint_32>(width);
    image.height = static_cast<png_uint_32>(height);
    image.format = rgb ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&image, path.c_str(), 0, data.data(), 0, nullptr)) {
        throw IoError("cannot write " + path + " (" + image.message + ")");
    }
}

}  // namespace

ScalarField load_image(const std::string& path) {
    const std::vector<std::uint8_t> bytes = read_file(path);
    static constexpr std::array<std::uint8_t, 8> kPngSignature{0x89, 'P', 'N', 'G',
                                                               '\r', '\n', 0x1a, '\n'};
    if (bytes.size() >= kPngSignature.size() &&
        std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin())) {
        return decode_png(bytes, path);
    }
    if (bytes.size() >= 2 && bytes[0] == 'P') {
        switch (bytes[1]) {
            case '5':
                return decode_pgm(bytes, path);
            case '2':
                throw FormatError(path + ": ASCII PGM (P2) is not supported; use binary P5");
            case '3':
            case '6':
                throw FormatError(path + ": color PPM; expected grayscale");
            default:
                break;
        }
    }
    throw FormatError(path + ": unrecognized image format (expected PGM P5 or PNG)");
}

void save_image(const ScalarField& image, const std::string& path) {
    std::vector<std::uint8_t> bytes(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) bytes[i] = to_byte(image[i]);
    if (ends_with(path, ".png")) {
        write_png(path, image.width(), image.height(), false, bytes);
    } else {
        write_bytes(path,
                    "P5\n" + std::to_string(image.width()) + " " +
                        std::to_string(image.height()) + "\n255\n",
                    bytes);
    }
}

BinaryMask mask_boundary(const BinaryMask& mask) {
    const int w = mask.width;
    const int h = mask.height;
    BinaryMask edge(w, h);
    auto in = [&](int x, int y) { return x >= 0 && y >= 0 && x < w && y < h && mask(x, y); };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (in(x, y) && (!in(x - 1, y) || !in(x + 1, y) || !in(x, y - 1) || !in(x, y + 1))) {
                edge.values[static_cast<std::size_t>(y) * w + x] = 1;
            }
        }
    }
    return edge;
}

RgbImage render_overlay(const ScalarField& image, const BinaryMask& initial,
                        const BinaryMask& final_mask) {
    for (const BinaryMask* m : {&initial, &final_mask}) {
        if (m->width != image.width() || m->height != image.height()) {
            throw DimensionError("overlay mask does not match the image size");
        }
    }
    RgbImage out{image.width(), image.height(), std::vector<std::uint8_t>(3 * image.size())};
    for (std::size_t i = 0; i < image.size(); ++i) {
        const std::uint8_t g = to_byte(image[i]);
        out.rgb[3 * i] = out.rgb[3 * i + 1] = out.rgb[3 * i + 2] = g;
    }
    auto paint = [&](const BinaryMask& edge, std::array<std::uint8_t, 3> color) {
        for (std::size_t i = 0; i < edge.values.size(); ++i) {
            if (edge.values[i]) std::copy(color.begin(), color.end(), out.rgb.begin() + 3 * i);
        }
    };
    paint(mask_boundary(initial), {0, 255, 0});
    paint(mask_boundary(final_mask), {255, 0, 0});
    return out;
}

void save_rgb(const RgbImage& image, const std::string& path) {
    if (ends_with(path, ".ppm")) {
        write_bytes(path,
                    "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) +
                        "\n255\n",
                    image.rgb);
    } else {
        write_png(path, image.width, image.height, true, image.rgb);
    }
}

void save_overlay(const ScalarField& image, const BinaryMask& initial,
                  const BinaryMask& final_mask, const std::string& path) {
    save_rgb(render_overlay(image, initial, final_mask), path);
}

}  // namespace psseg
