#pragma once

// POVM files: a `dim: <d>` header, then d rows of d complex entries per
// element (`re`, `re+imi`, `re-imi`, `imi`). Element e votes for state e.

#include <string>
#include <string_view>

#include "tpc/discrim.hpp"

namespace tpc {

// Throws ParseError for malformed text. Element validation (PSD,
// completeness) is left to Povm::make, which throws std::invalid_argument.
std::vector<ComplexMatrix> parse_povm_elements(std::string_view text);
Povm parse_povm_file(std::string_view text);

std::string format_povm_file(const Povm& povm);

Complex parse_complex(std::string_view token);

}  // namespace tpc
