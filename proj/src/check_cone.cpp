#include "fano4/cone.hpp"
