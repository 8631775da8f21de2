#pragma once

#include "maslov/bundle.hpp"
#include "maslov/error.hpp"
#include "maslov/index.hpp"
#include "maslov/path.hpp"
#include "maslov/random.hpp"
#include "maslov/symplectic.hpp"
#include "maslov/verify.hpp"

namespace maslov {
inline constexpr const char* kVersion = "0.1.0";
}
