#include "nehari/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

namespace nehari {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(fmt::format("cannot write '{}'", path.string()));
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        out.push_back(item);
    }
    return out;
}

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(' ');
    const auto e = s.find_last_not_of(' ');
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

template <typename T>
T number(const std::string& s) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw IoError(fmt::format("malformed number '{}'", s));
    }
    return v;
}

}  // namespace

std::string grid_header(const DomainSpec& d) {
    std::vector<double> lengths(d.lengths().begin(), d.lengths().end());
    std::vector<int> shape(d.shape().begin(), d.shape().end());
    return fmt::format("nehari-grid v1; dim={}; kind={}; shape={}; lengths={}", d.dimension(),
                       d.periodic() ? "periodic" : "dirichlet", fmt::join(shape, ","), fmt::join(lengths, ","));
}

void write_grid(const std::filesystem::path& path, const GridFunction& f) {
    std::ofstream out = open_out(path);
    out << grid_header(f.domain()) << '\n';
    std::vector<unsigned char> bytes(f.size() * 8);
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto bits = std::bit_cast<std::uint64_t>(f[i]);
        for (int b = 0; b < 8; ++b) {
            bytes[8 * i + static_cast<std::size_t>(b)] = static_cast<unsigned char>(bits & 0xffu);
            bits >>= 8;
        }
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError(fmt::format("write failed for '{}'", path.string()));
    }
}

GridFunction read_grid(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open '{}'", path.string()));
    }
    std::string header;
    std::getline(in, header);
    const auto fields = split(header, ';');
    if (fields.empty() || strip(fields[0]) != "nehari-grid v1") {
        throw IoError(fmt::format("'{}' is not a nehari-grid v1 file", path.string()));
    }
    std::map<std::string, std::string> kv;
    for (std::size_t i = 1; i < fields.size(); ++i) {
        const std::string f = strip(fields[i]);
        const auto eq = f.find('=');
        if (eq == std::string::npos) {
            throw IoError(fmt::format("malformed header field '{}'", f));
        }
        kv[f.substr(0, eq)] = f.substr(eq + 1);
    }
    for (const char* key : {"dim", "kind", "shape", "lengths"}) {
        if (!kv.contains(key)) {
            throw IoError(fmt::format("grid header lacks '{}'", key));
        }
    }
    const int dim = number<int>(kv["dim"]);
    std::vector<int> shape;
    std::vector<double> lengths;
    for (const auto& s : split(kv["shape"], ',')) {
        shape.push_back(number<int>(s));
    }
    for (const auto& s : split(kv["lengths"], ',')) {
        lengths.push_back(number<double>(s));
    }
    if (static_cast<int>(shape.size()) != dim || static_cast<int>(lengths.size()) != dim) {
        throw IoError("grid header dimension mismatch");
    }
    DomainPtr domain;
    if (kv["kind"] == "periodic") {
        std::vector<int> periods;
        for (double L : lengths) {
            periods.push_back(static_cast<int>(std::lround(L)));
        }
        domain = make_domain(DomainSpec::periodic_torus(periods, shape[0] / periods[0]));
    } else if (kv["kind"] == "dirichlet") {
        domain = make_domain(DomainSpec::dirichlet_box(lengths, shape));
    } else {
        throw IoError(fmt::format("unknown grid kind '{}'", kv["kind"]));
    }
    GridFunction f(domain);
    std::vector<unsigned char> bytes(f.size() * 8);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (static_cast<std::size_t>(in.gcount()) != bytes.size()) {
        throw IoError(fmt::format("'{}' is truncated", path.string()));
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::uint64_t bits = 0;
        for (int b = 7; b >= 0; --b) {
            bits = (bits << 8) | bytes[8 * i + static_cast<std::size_t>(b)];
        }
        f[i] = std::bit_cast<double>(bits);
    }
    return f;
}

std::string format_float(double x) { return fmt::format("{:.17g}", x); }

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out = open_out(path);
    out << fmt::format("{}\n", fmt::join(header, ","));
    std::string line;
    for (const auto& row : rows) {
        line.clear();
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) {
                line += ',';
            }
            line += format_float(row[j]);
        }
        line += '\n';
        out << line;
    }
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path, std::vector<std::string>* header) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open '{}'", path.string()));
    }
    std::string line;
    std::getline(in, line);
    if (header) {
        *header = split(line, ',');
    }
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        for (const auto& cell : split(line, ',')) {
            row.push_back(number<double>(cell));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_grid_csv(const std::filesystem::path& path, const GridFunction& f) {
    const DomainSpec& d = f.domain();
    std::vector<std::string> header;
    for (int a = 0; a < d.dimension(); ++a) {
        header.push_back(fmt::format("i{}", a + 1));
    }
    for (int a = 0; a < d.dimension(); ++a) {
        header.push_back(fmt::format("x{}", a + 1));
    }
    header.emplace_back("value");
    std::vector<std::vector<double>> rows;
    rows.reserve(f.size());
    for (std::size_t flat = 0; flat < f.size(); ++flat) {
        const auto idx = d.unravel(flat);
        std::vector<double> row;
        for (int a = 0; a < d.dimension(); ++a) {
            row.push_back(idx[static_cast<std::size_t>(a)]);
        }
        for (int a = 0; a < d.dimension(); ++a) {
            row.push_back(d.coordinate(a, idx[static_cast<std::size_t>(a)]));
        }
        row.push_back(f[flat]);
        rows.push_back(std::move(row));
    }
    write_csv(path, header, rows);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out = open_out(path);
    out << text;
}

}  // namespace nehari
