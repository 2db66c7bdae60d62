#include "fano4/toric.hpp"
