#include "fano4/replay.hpp"
