#include "r2dpca/pgm.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <string>

#include "r2dpca/errors.hpp"

namespace r2dpca {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw LoadError("pgm: " + path.string() + ": " + what);
}

// Skips whitespace and '#' comments, then reads one unsigned decimal token.
int next_header_int(std::istream& in) {
    for (;;) {
        const int c = in.peek();
        if (c == EOF)
            return -1;
        if (c == '#') {
            std::string line;
            std::getline(in, line);
            continue;
        }
        if (std::isspace(c)) {
            in.get();
            continue;
        }
        break;
    }
    int value = -1;
    in >> value;
    return in ? value : -1;
}

} // namespace

Matrix read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(path, "cannot open file");

    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || (m1 != '5' && m1 != '2'))
        fail(path, "unknown format (expected P5 or P2)");
    const bool binary = (m1 == '5');

    const int width = next_header_int(in);
    const int height = next_header_int(in);
    const int maxval = next_header_int(in);
    if (width < 1 || height < 1)
        fail(path, "bad image dimensions");
    if (maxval < 1 || maxval > 255)
        fail(path, "maxval out of range (must be 1..255)");

    Matrix img(height, width);
    if (binary) {
        in.get(); // single whitespace byte after maxval
        std::string raster(static_cast<std::size_t>(width) * height, '\0');
        in.read(raster.data(), static_cast<std::streamsize>(raster.size()));
        if (in.gcount() != static_cast<std::streamsize>(raster.size()))
            fail(path, "truncated raster");
        std::size_t k = 0;
        for (int i = 0; i < height; ++i)
            for (int j = 0; j < width; ++j)
                img(i, j) = static_cast<unsigned char>(raster[k++]) /
                            static_cast<double>(maxval);
    } else {
        for (int i = 0; i < height; ++i)
            for (int j = 0; j < width; ++j) {
                const int value = next_header_int(in);
                if (value < 0 || value > maxval)
                    fail(path, "bad or missing pixel value");
                img(i, j) = value / static_cast<double>(maxval);
            }
    }
    return img;
}

void write_pgm(const std::filesystem::path& path, const Matrix& image) {
    if (image.empty())
        throw InvalidInput("write_pgm: empty image");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw LoadError("pgm: " + path.string() + ": cannot open for writing");
    out << "P5\n" << image.cols() << " " << image.rows() << "\n255\n";
    for (int i = 0; i < image.rows(); ++i)
        for (int j = 0; j < image.cols(); ++j) {
            long v = std::lround(image(i, j) * 255.0);
            v = std::min(255L, std::max(0L, v));
            out.put(static_cast<char>(static_cast<unsigned char>(v)));
        }
    if (!out)
        throw LoadError("pgm: " + path.string() + ": write failed");
}

} // namespace r2dpca
