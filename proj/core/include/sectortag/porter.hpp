#pragma once

#include <string>
#include <string_view>

namespace sectortag {

/// Porter (1980) suffix stripper, including the reference implementation's
/// departures (bli->ble, logi->log, words of length <= 2 untouched).
/// Input must be lowercase ASCII letters; behaviour on other input is to
/// return it unchanged wherever no suffix rule applies.
std::string porter_stem(std::string_view token);

} // namespace sectortag
