#include "indopt/config.hpp"

namespace indopt {

Tolerances& tolerances() {
    static Tolerances t;
    return t;
}

} // namespace indopt
