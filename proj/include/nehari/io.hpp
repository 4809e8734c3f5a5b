#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "nehari/grid.hpp"

namespace nehari {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// `nehari-grid v1; dim=..; kind=..; shape=..; lengths=..` header line
/// followed by little-endian float64 values in row-major order.
std::string grid_header(const DomainSpec& d);
void write_grid(const std::filesystem::path& path, const GridFunction& f);
GridFunction read_grid(const std::filesystem::path& path);

/// Floats with 17 significant digits.
std::string format_float(double x);

/// Comma-separated, header row, LF line endings.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
std::vector<std::vector<double>> read_csv(const std::filesystem::path& path, std::vector<std::string>* header = nullptr);

/// One row per node: i1..iN, x1..xN, value.
void write_grid_csv(const std::filesystem::path& path, const GridFunction& f);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace nehari
