#include "gpac/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

namespace gpac {

namespace {

double parse_double(std::string_view field, std::size_t lineno) {
  // trim surrounding whitespace
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t'))
    field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' ||
                            field.back() == '\r'))
    field.remove_suffix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(),
                                   value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw IoError("line " + std::to_string(lineno) +
                  ": non-numeric field '" + std::string(field) + "'");
  return value;
}

}  // namespace

Dataset load_csv(const std::string& path,
                 std::optional<std::size_t> label_column) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  std::vector<double> feats;
  std::vector<std::int64_t> labels;
  std::size_t width = 0;  // columns per row, fixed by the first data row
  std::size_t n = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::size_t cols = 0;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      std::string_view field(line.data() + start, end - start);
      const double value = parse_double(field, lineno);
      if (label_column && cols == *label_column) {
        const auto lab = static_cast<std::int64_t>(std::llround(value));
        if (static_cast<double>(lab) != value)
          throw IoError("line " + std::to_string(lineno) +
                        ": label column holds a non-integer value");
        labels.push_back(lab);
      } else {
        feats.push_back(value);
      }
      ++cols;
      start = end + 1;
    }
    if (width == 0) {
      width = cols;
      if (label_column && *label_column >= width)
        throw IoError("label column index " +
                      std::to_string(*label_column) +
                      " is outside the " + std::to_string(width) +
                      "-column layout");
    } else if (cols != width) {
      throw IoError("line " + std::to_string(lineno) + ": expected " +
                    std::to_string(width) + " columns, found " +
                    std::to_string(cols));
    }
    ++n;
  }
  if (n == 0) throw IoError(path + " contains no data rows");
  const std::size_t d = label_column ? width - 1 : width;
  if (d == 0) throw IoError(path + " has no feature columns");
  return Dataset(std::move(feats), n, d, std::move(labels));
}

Dataset load_binary(const std::string& features_path,
                    const std::string& labels_path) {
  std::ifstream in(features_path, std::ios::binary);
  if (!in) throw IoError("cannot open " + features_path);
  std::uint64_t n = 0, d = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  in.read(reinterpret_cast<char*>(&d), sizeof(d));
  if (!in) throw IoError(features_path + ": truncated header");
  if (n == 0 || d == 0 || n > (1ull << 40) / std::max<std::uint64_t>(d, 1))
    throw IoError(features_path + ": implausible header dimensions");
  std::vector<double> feats(n * d);
  in.read(reinterpret_cast<char*>(feats.data()),
          static_cast<std::streamsize>(feats.size() * sizeof(double)));
  if (!in) throw IoError(features_path + ": truncated feature payload");

  std::vector<std::int64_t> labels;
  if (!labels_path.empty()) {
    std::ifstream lin(labels_path, std::ios::binary);
    if (!lin) throw IoError("cannot open " + labels_path);
    labels.resize(n);
    lin.read(reinterpret_cast<char*>(labels.data()),
             static_cast<std::streamsize>(labels.size() * sizeof(std::int64_t)));
    if (!lin) throw IoError(labels_path + ": truncated label payload");
  }
  return Dataset(std::move(feats), n, d, std::move(labels));
}

void save_binary(const Dataset& data, const std::string& features_path,
                 const std::string& labels_path) {
  std::ofstream out(features_path, std::ios::binary);
  if (!out) throw IoError("cannot open " + features_path + " for writing");
  const std::uint64_t n = data.n, d = data.d;
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  out.write(reinterpret_cast<const char*>(&d), sizeof(d));
  out.write(reinterpret_cast<const char*>(data.features.data()),
            static_cast<std::streamsize>(data.features.size() * sizeof(double)));
  if (!out) throw IoError("failed writing " + features_path);
  if (!labels_path.empty()) {
    if (!data.has_labels())
      throw InvalidArgument("dataset has no labels to save");
    std::ofstream lout(labels_path, std::ios::binary);
    if (!lout) throw IoError("cannot open " + labels_path + " for writing");
    lout.write(reinterpret_cast<const char*>(data.labels.data()),
               static_cast<std::streamsize>(data.labels.size() *
                                            sizeof(std::int64_t)));
    if (!lout) throw IoError("failed writing " + labels_path);
  }
}

void write_labels(std::span<const std::int64_t> labels,
                  const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  for (std::int64_t l : labels) out << l << '\n';
  if (!out) throw IoError("failed writing " + path);
}

void write_matrix_csv(std::span<const double> values, std::size_t rows,
                      std::size_t cols, const std::string& path) {
  if (values.size() != rows * cols)
    throw InvalidArgument("matrix buffer size does not match rows*cols");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  char buf[48];
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const int len =
          std::snprintf(buf, sizeof(buf), "%.17g", values[i * cols + j]);
      if (j) out.put(',');
      out.write(buf, len);
    }
    out.put('\n');
  }
  if (!out) throw IoError("failed writing " + path);
}

std::vector<double> read_matrix_csv(const std::string& path,
                                    std::size_t& rows, std::size_t& cols) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<double> values;
  rows = 0;
  cols = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::size_t count = 0;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      values.push_back(
          parse_double({line.data() + start, end - start}, lineno));
      ++count;
      start = end + 1;
    }
    if (cols == 0)
      cols = count;
    else if (count != cols)
      throw IoError("line " + std::to_string(lineno) + ": ragged row");
    ++rows;
  }
  return values;
}

}  // namespace gpac
