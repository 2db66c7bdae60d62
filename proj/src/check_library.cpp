#include "fano4/library.hpp"
