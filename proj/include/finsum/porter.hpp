#pragma once

#include <string>
#include <string_view>

namespace finsum {

// Porter stemmer, classic 1980 rule set (no later revisions). Input is
// expected to be lowercase; words of length <= 2 and strings containing
// non-letter characters pass through largely unchanged.
std::string porter_stem(std::string_view word);

}  // namespace finsum
