#pragma once

// Umbrella header.

#include "bfp/bigint.hpp"
#include "bfp/config.hpp"
#include "bfp/errors.hpp"
#include "bfp/mirsky.hpp"
#include "bfp/numtheory.hpp"
#include "bfp/oracle.hpp"
#include "bfp/pressure.hpp"
#include "bfp/rational.hpp"
#include "bfp/transfer.hpp"
#include "bfp/verify.hpp"
#include "bfp/words.hpp"
