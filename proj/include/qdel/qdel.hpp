#pragma once

#include "qdel/binary_base.hpp"
#include "qdel/channel.hpp"
#include "qdel/code.hpp"
#include "qdel/decoder.hpp"
#include "qdel/errors.hpp"
#include "qdel/harness.hpp"
#include "qdel/modular.hpp"
#include "qdel/phi.hpp"
#include "qdel/regular.hpp"
#include "qdel/sketch.hpp"
#include "qdel/strings.hpp"
