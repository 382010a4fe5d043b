#pragma once

namespace hallgrp {

inline constexpr const char* version = "1.0.0";

}  // namespace hallgrp
