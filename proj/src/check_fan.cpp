#include "fano4/fan.hpp"
