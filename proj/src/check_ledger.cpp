#include "fano4/ledger.hpp"
