#ifndef OQEC_IO_HPP
#define OQEC_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "oqec/channel.hpp"
#include "oqec/noiseless.hpp"

namespace oqec {

/// Malformed or structurally invalid input file. Carries a field diagnostic.
class FileFormatError : public Error {
public:
  explicit FileFormatError(const std::string& what) : Error(what) {}
};

/// Raw contents of a channel file, before trace-preservation is enforced.
struct ChannelFileData {
  Eigen::Index dim = 0;
  std::vector<ComplexMatrix> kraus;
};

/// Channel files: {"dim": d, "kraus": [matrix, ...]} where a matrix is an
/// array of rows and every entry is an [re, im] pair. Doubles serialize as
/// the shortest round-tripping decimal with lowercase e-notation.
ChannelFileData read_channel_data(const std::filesystem::path& path);
QuantumChannel read_channel(const std::filesystem::path& path, const Tolerance& tol = {});
void write_channel(const std::filesystem::path& path, const QuantumChannel& ch);

/// Decomposition files: {"dim": d, "m": m, "n": n, "convention": ...,
/// "isometry": matrix}. Orthonormality is validated on load.
SubsystemDecomposition read_decomposition(const std::filesystem::path& path,
                                          const Tolerance& tol = {});
void write_decomposition(const std::filesystem::path& path, const SubsystemDecomposition& dec);

/// Unitary files: {"dim": d, "matrix": matrix}.
ComplexMatrix read_unitary(const std::filesystem::path& path, const Tolerance& tol = {});
void write_unitary(const std::filesystem::path& path, const ComplexMatrix& U);

}  // namespace oqec

#endif
