#include "skelgraph/image_io.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace skelgraph {

namespace {

// Next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {
            }
            continue;
        }
        if (std::isspace(ch)) continue;
        tok.push_back(static_cast<char>(ch));
        while ((ch = in.peek()) != EOF && !std::isspace(ch) && ch != '#') {
            tok.push_back(static_cast<char>(in.get()));
        }
        return tok;
    }
    return tok;
}

int parse_header_int(std::istream& in, const std::string& path, const char* what) {
    std::string tok = next_token(in);
    if (tok.empty()) throw FormatError(path + ": truncated header (missing " + what + ")");
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw FormatError(path + ": invalid " + std::string(what) + " '" + tok + "'");
    }
}

int parse_ascii_sample(std::istream& in, const std::string& path) {
    int v = parse_header_int(in, path, "sample");
    if (v < 0 || v > 255) throw FormatError(path + ": sample out of range");
    return v;
}

} // namespace

GrayImage load_grayscale(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);

    std::string magic = next_token(in);
    if (magic != "P2" && magic != "P3" && magic != "P5" && magic != "P6")
        throw FormatError(path + ": unsupported format '" + magic + "' (want PGM P2/P5 or PPM P3/P6)");
    bool color = (magic == "P3" || magic == "P6");
    bool raw = (magic == "P5" || magic == "P6");

    int w = parse_header_int(in, path, "width");
    int h = parse_header_int(in, path, "height");
    int maxval = parse_header_int(in, path, "maxval");
    if (w < 1 || h < 1) throw FormatError(path + ": invalid dimensions");
    if (maxval <= 0 || maxval > 255)
        throw FormatError(path + ": unsupported bit depth (maxval " + std::to_string(maxval) + ")");

    GrayImage img(w, h);
    std::size_t npix = static_cast<std::size_t>(w) * h;

    if (raw) {
        // exactly one whitespace byte separates maxval from raster data
        in.get();
        std::size_t nbytes = npix * (color ? 3 : 1);
        std::vector<std::uint8_t> buf(nbytes);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(nbytes));
        if (static_cast<std::size_t>(in.gcount()) != nbytes)
            throw FormatError(path + ": truncated raster data");
        if (color) {
            for (std::size_t i = 0; i < npix; ++i)
                img.data[i] = luminance_u8(buf[3 * i], buf[3 * i + 1], buf[3 * i + 2]);
        } else {
            img.data.assign(buf.begin(), buf.end());
        }
    } else {
        for (std::size_t i = 0; i < npix; ++i) {
            if (color) {
                int r = parse_ascii_sample(in, path);
                int g = parse_ascii_sample(in, path);
                int b = parse_ascii_sample(in, path);
                img.data[i] = luminance_u8(static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                                           static_cast<std::uint8_t>(b));
            } else {
                img.data[i] = static_cast<std::uint8_t>(parse_ascii_sample(in, path));
            }
        }
    }
    return img;
}

BinaryImage load_binary(const std::string& path) {
    GrayImage g = load_grayscale(path);
    BinaryImage b(g.width, g.height);
    for (std::size_t i = 0; i < g.data.size(); ++i) b.data[i] = g.data[i] != 0 ? 1 : 0;
    return b;
}

void write_pgm(const GrayImage& img, const std::string& path) {
    std::ostringstream out;
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data.data()),
              static_cast<std::streamsize>(img.data.size()));
    write_file_atomic(path, out.str());
}

void write_pgm(const BinaryImage& img, const std::string& path) {
    GrayImage g(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i) g.data[i] = img.data[i] ? 255 : 0;
    write_pgm(g, path);
}

void write_ppm(const RgbImage& img, const std::string& path) {
    std::ostringstream out;
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data.data()),
              static_cast<std::streamsize>(img.data.size()));
    write_file_atomic(path, out.str());
}

void write_file_atomic(const std::string& path, const std::string& bytes) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw IoError("short write to " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace skelgraph
