#include "fano4/birational.hpp"
