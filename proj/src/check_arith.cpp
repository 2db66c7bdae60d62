#include "fano4/arith.hpp"
