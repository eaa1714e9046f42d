#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace idbench {

// Splits an identifier into lowercase subtokens on `_`, `$`, lower-to-upper
// boundaries and before the last capital of an acronym run followed by a
// lowercase letter. Digits stay with the preceding subtoken.
std::vector<std::string> tokenize_identifier(std::string_view id);

}  // namespace idbench
