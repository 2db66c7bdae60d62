#include "fano4/json_io.hpp"
