#ifndef GPAC_IO_HPP
#define GPAC_IO_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gpac/types.hpp"

namespace gpac {

/// CSV dataset: one sample per row, comma-separated decimal features,
/// optionally one integer label column (0-based index).
Dataset load_csv(const std::string& path,
                 std::optional<std::size_t> label_column = {});

/// Raw little-endian binary: header of two u64 (n, d) followed by n*d f64,
/// row-major. Labels live in a sibling file of n i64 when given.
Dataset load_binary(const std::string& features_path,
                    const std::string& labels_path = {});
void save_binary(const Dataset& data, const std::string& features_path,
                 const std::string& labels_path = {});

void write_labels(std::span<const std::int64_t> labels,
                  const std::string& path);

/// Matrix CSV with 17 significant digits per value (round-trip exact).
void write_matrix_csv(std::span<const double> values, std::size_t rows,
                      std::size_t cols, const std::string& path);
std::vector<double> read_matrix_csv(const std::string& path,
                                    std::size_t& rows, std::size_t& cols);

}  // namespace gpac

#endif  // GPAC_IO_HPP
