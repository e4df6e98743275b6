#pragma once

#include <string>
#include <string_view>

namespace vocleap {

/// Porter stemming algorithm (steps 1a-5b) in the reference flavor that the
/// public test vocabulary corresponds to: includes the extra (m>0) logi->log
/// rule, uses (m>0) bli->ble, and leaves strings of length <= 2 unchanged.
/// Input must already be lowercase.
std::string porter_stem(std::string_view word);

}  // namespace vocleap
