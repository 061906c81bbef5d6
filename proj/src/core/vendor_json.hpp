#pragma once

// Single include point for the vendored nlohmann/json header. Reports use
// ordered_json so serialized output is byte-stable across round trips.
#include "json.hpp"
