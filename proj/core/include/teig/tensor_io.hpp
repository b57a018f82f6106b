#pragma once

#include "teig/tensor.hpp"

#include <string>
#include <vector>

namespace teig {

// Versioned text tensor format (".tns"):
//   optional line-initial '#' comment lines (before the header only)
//   TNS 1
//   order <m> dim <n> layout dense
//   <n^m whitespace-separated decimal reals, row-major multi-index order>
// Values are written with 17 significant digits, which round-trips 64-bit
// reals exactly.

/// Writes the tensor; `comments` become leading '#' lines. Throws
/// std::runtime_error on I/O failure.
void write_tensor(const std::string& path, const SymmetricTensor& t,
                  const std::vector<std::string>& comments = {});

/// Reads a .tns file. Parse errors name the byte offset. The returned tensor
/// has an unset symmetry flag; call verified_symmetric() before handing it to
/// code that requires symmetry.
SymmetricTensor read_tensor(const std::string& path);

} // namespace teig
