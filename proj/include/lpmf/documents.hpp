#ifndef LPMF_DOCUMENTS_HPP
#define LPMF_DOCUMENTS_HPP

#include <string>

#include "lpmf/wavelet.hpp"

namespace lpmf {

/// Document text formats (JSON, schema_version 1). Scalars are serialized
/// as exact strings in the scalar grammar, never as decimals; unknown
/// members are rejected. Matrix documents list coefficient blocks by
/// strictly increasing `power`, where a block M at power p contributes
/// M * z^p. Loading validates every schema invariant eagerly.

std::string matrix_to_text(const LPMatrix& a);
LPMatrix matrix_from_text(const std::string& text);

std::string factorization_to_text(const NilFactorization& f);
NilFactorization factorization_from_text(const std::string& text);

std::string lattice_to_text(const LatticeForm& lf);
LatticeForm lattice_from_text(const std::string& text);

std::string bundle_to_text(const WaveletFactorizationBundle& b);
WaveletFactorizationBundle bundle_from_text(const std::string& text);

/// File helpers; a path of "-" means stdin/stdout.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace lpmf

#endif
