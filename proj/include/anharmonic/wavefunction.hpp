#pragma once

#include <functional>

#include "anharmonic/quad.hpp"

namespace anharmonic {

/// Real position-space wavefunction with a finite window outside which it is
/// negligible (tail mass below ~1e-12).
struct Wavefunction {
    std::function<double(double)> value;
    quad::Bounds support;
    bool even = false;

    double operator()(double x) const { return value(x); }
};

}  // namespace anharmonic
