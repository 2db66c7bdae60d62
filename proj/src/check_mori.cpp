#include "fano4/mori.hpp"
