#pragma once
// Convenience include for the whole library.

#include "vbp/bits.hpp"
#include "vbp/image.hpp"
#include "vbp/metrics.hpp"
#include "vbp/numeral_system.hpp"
#include "vbp/pgm.hpp"
#include "vbp/stego.hpp"
