#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "perronkit/tensor.hpp"

namespace perronkit {

// Sparse text format:
//
//   m n
//   i1 i2 ... im value
//   ...
//
// Indices are 1-based, values are nonnegative decimal literals, lines
// starting with '#' are comments. Duplicate tuples are rejected.

NonnegativeTensor read_tensor(std::istream& in);
NonnegativeTensor read_tensor_file(const std::filesystem::path& path);

/// Writes entries in sorted tuple order with shortest round-trip literals,
/// so read(write(A)) reproduces every value bit for bit.
void write_tensor(std::ostream& out, const NonnegativeTensor& tensor);
void write_tensor_file(const std::filesystem::path& path, const NonnegativeTensor& tensor);

/// Shortest decimal literal that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace perronkit
