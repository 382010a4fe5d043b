#pragma once

// Everything except report.hpp, which needs OpenSSL.

#include "hallgrp/amplitude.hpp"
#include "hallgrp/error.hpp"
#include "hallgrp/field.hpp"
#include "hallgrp/group.hpp"
#include "hallgrp/hall.hpp"
#include "hallgrp/instance.hpp"
#include "hallgrp/linalg.hpp"
#include "hallgrp/modrep.hpp"
#include "hallgrp/symplectic.hpp"
#include "hallgrp/version.hpp"
