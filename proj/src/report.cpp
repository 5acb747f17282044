#include "um/scalar.hpp"

namespace um {
}
